#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>
#include <atomic>
#include <cstdlib>

#include "cvhide/commands.hpp"
#include "cvhide/verify.hpp"

using namespace cvhide;

TEST_CASE("float formatting is fixed-width 12 significant digits") {
    CHECK(format_sig12(1.0) == "1.00000000000e+00");
    CHECK(format_sig12(-0.5) == "-5.00000000000e-01");
    CHECK(format_sig12(0.0) == "0.00000000000e+00");
    CHECK(format_sig12(-0.0) == "0.00000000000e+00");
    CHECK(format_sig12(3.183099e-3) == "3.18309900000e-03");
    // round-trips through strtod
    for (double v : {0.1, 2.0 / 3.0, 1.23456789012e-7}) {
        const double back = std::strtod(format_sig12(v).c_str(), nullptr);
        CHECK(back == doctest::Approx(v).epsilon(1e-11));
    }
}

TEST_CASE("range parsing") {
    SUBCASE("start:stop:step inclusive") {
        const auto r = parse_range("0:2:0.5");
        REQUIRE(r.size() == 5);
        CHECK(r.front() == 0.0);
        CHECK(r.back() == doctest::Approx(2.0));
    }
    SUBCASE("single value") {
        const auto r = parse_range("0.75");
        REQUIRE(r.size() == 1);
        CHECK(r[0] == 0.75);
    }
    SUBCASE("integer ranges") {
        const auto r = parse_int_range("10:100:10");
        REQUIRE(r.size() == 10);
        CHECK(r.front() == 10);
        CHECK(r.back() == 100);
    }
    SUBCASE("malformed inputs") {
        CHECK_THROWS_AS(parse_range("1:2"), invalid_parameter);
        CHECK_THROWS_AS(parse_range("5:1:1"), invalid_parameter);
        CHECK_THROWS_AS(parse_range("a:b:c"), invalid_parameter);
        CHECK_THROWS_AS(parse_range("1:2:0"), invalid_parameter);
    }
}

TEST_CASE("parallel_for") {
    SUBCASE("covers every index exactly once, any job count") {
        for (int jobs : {1, 3, 8}) {
            std::vector<std::atomic<int>> hits(257);
            parallel_for(257, jobs, [&](int i) { hits[i]++; });
            for (auto& h : hits) CHECK(h.load() == 1);
        }
    }
    SUBCASE("propagates worker exceptions") {
        CHECK_THROWS_AS(
            parallel_for(16, 4, [](int i) { if (i == 7) throw numeric_error("boom"); }),
            numeric_error);
    }
}

TEST_CASE("serialization") {
    Table t;
    t.columns = {"a", "b"};
    t.rows = {{"1", "2"}, {"3", "4"}};
    t.cutoffs = {"40"};
    t.grids = {"radial"};
    SUBCASE("csv has a header and one line per row") {
        CHECK(to_csv(t) == "a,b\n1,2\n3,4\n");
    }
    SUBCASE("text aligns columns") {
        const std::string txt = to_text(t);
        CHECK(txt.find("a  b") == 0);
    }
    SUBCASE("json carries schema, params, rows, and provenance") {
        const auto j = nlohmann::json::parse(to_json(t, "demo", {{"x", "1"}}));
        CHECK(j["schema_version"] == 1);
        CHECK(j["command"] == "demo");
        CHECK(j["params"]["x"] == "1");
        REQUIRE(j["rows"].size() == 2);
        CHECK(j["rows"][1]["b"] == "4");
        CHECK(j["provenance"]["cutoffs"][0] == "40");
        CHECK(j["provenance"]["grids"][0] == "radial");
    }
}

TEST_CASE("sweep tables are deterministic") {
    const std::vector<double> lams = {0.0, 0.3};
    const std::string a = to_csv(even_odd_table(lams, 1e-12, 1));
    const std::string b = to_csv(even_odd_table(lams, 1e-12, 1));
    const std::string c = to_csv(even_odd_table(lams, 1e-12, 4));
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a.find("lambda,beta_1") == 0);
}

TEST_CASE("even-odd rows report perfect distinguishability") {
    const Table t = even_odd_table({0.0, 0.4, 0.8}, 1e-12, 1);
    for (const auto& row : t.rows) CHECK(row[1] == "1.00000000000e+00");
}

TEST_CASE("budget and locc tables expose the planned values") {
    BudgetQuery q;
    q.energy = 0.0;
    q.m = 1;
    q.fixed = BudgetQuery::Fixed::eta;
    q.eta = 1.0;
    const Table t = bk_budget_table({0.1}, q);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][6].substr(0, 7) == "2.49714");  // squeezing dB

    const Table l = locc_bound_table(1.0, {5.4}, 1);
    REQUIRE(l.rows.size() == 1);
    CHECK(l.rows[0][5].substr(0, 7) == "1.00088");  // the ~1e-3 bound
}

TEST_CASE("verification registry is filterable and deterministic") {
    const auto cm = run_verification("cm");
    CHECK(cm.size() == 8);
    CHECK(all_passed(cm));
    const auto again = run_verification("cm");
    CHECK(verification_report(cm) == verification_report(again));
    const std::string rep = verification_report(cm);
    CHECK(rep.find("[PASS] cm.c1") != std::string::npos);
}
