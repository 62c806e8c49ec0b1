#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cvhide/phase_space.hpp"
#include "cvhide/quadrature.hpp"

using namespace cvhide;

namespace {

double uniform(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

TruncatedOperator random_low_rank_state(std::mt19937_64& rng, int dim, int support, int rank) {
    Matrix v(support, rank);
    for (int j = 0; j < rank; ++j)
        for (int i = 0; i < support; ++i) {
            const double u1 = std::max(uniform(rng), 1e-300), u2 = uniform(rng);
            const double m = std::sqrt(-2.0 * std::log(u1));
            v(i, j) = complexd(m * std::cos(2 * M_PI * u2), m * std::sin(2 * M_PI * u2));
        }
    Matrix g = v * v.adjoint();
    g /= g.trace().real();
    Matrix full = Matrix::Zero(dim, dim);
    full.block(0, 0, support, support) = g;
    return {dim, 1, std::move(full), true, 0.0};
}

// two-displacement route, kept as a cross-check of the production one
double wigner_two_displacements(const TruncatedOperator& t, complexd alpha) {
    const Matrix dm = displacement_matrix(alpha, t.dim).entries;
    const Matrix pi = parity_matrix(t.dim).entries;
    const complexd w =
        (2.0 / M_PI) * (dm.adjoint() * t.entries * dm * pi).trace();
    return w.real();
}

} // namespace

TEST_CASE("characteristic function basics") {
    const TruncatedOperator vac = make_state(StateSpec::fock(0), 60);
    SUBCASE("at the origin it returns the trace") {
        CHECK(characteristic_fn(vac, complexd(0, 0)).real() == doctest::Approx(1.0));
    }
    SUBCASE("vacuum gives the Gaussian e^{-|a|^2/2}") {
        for (complexd a : {complexd(0.5, 0.0), complexd(0.8, -0.6), complexd(0.0, 1.2)}) {
            CHECK(characteristic_fn(vac, a).real() ==
                  doctest::Approx(std::exp(-0.5 * std::norm(a))).epsilon(1e-10));
            CHECK(std::abs(characteristic_fn(vac, a).imag()) < 1e-12);
        }
    }
    SUBCASE("geometric diagonal operators give the centred Gaussian") {
        // (1-t) t^{a†a} with t = nu/(nu+1) is the thermal state
        const double nu = 0.8, t = nu / (nu + 1.0);
        const TruncatedOperator th = make_state(StateSpec::thermal(nu), 100);
        const double coeff = 0.5 * (1.0 + t) / (1.0 - t);
        for (double mag : {0.4, 1.0, 1.8}) {
            const complexd a(mag, -0.3 * mag);
            CHECK(characteristic_fn(th, a).real() ==
                  doctest::Approx(std::exp(-coeff * std::norm(a))).epsilon(1e-9));
        }
    }
    SUBCASE("bounded by one on states") {
        std::mt19937_64 rng(3);
        const TruncatedOperator rho = random_low_rank_state(rng, 40, 8, 3);
        for (double x : {0.2, 0.9, 1.7})
            CHECK(std::abs(characteristic_fn(rho, complexd(x, 0.3))) <= 1.0 + 1e-10);
    }
}

TEST_CASE("wigner function basics") {
    SUBCASE("vacuum closed form") {
        const TruncatedOperator vac = make_state(StateSpec::fock(0), 48);
        for (complexd a : {complexd(0, 0), complexd(0.7, 0.2), complexd(-0.4, 1.0)})
            CHECK(wigner_fn(vac, a) ==
                  doctest::Approx((2.0 / M_PI) * std::exp(-2.0 * std::norm(a))).epsilon(1e-9));
    }
    SUBCASE("single photon at the origin is -2/pi") {
        const TruncatedOperator one = make_state(StateSpec::fock(1), 48);
        CHECK(wigner_fn(one, complexd(0, 0)) == doctest::Approx(-2.0 / M_PI).epsilon(1e-10));
    }
    SUBCASE("integrates to the trace") {
        const TruncatedOperator th = make_state(StateSpec::thermal(0.7), 64);
        const PhaseFunction w = wigner_function_of(th);
        double integral = 0.0;
        const PhaseGrid g = PhaseGrid::radial(8.0, 400);
        for (size_t i = 0; i < g.points.size(); ++i) integral += g.weights[i] * w.eval(g.points[i]);
        CHECK(integral == doctest::Approx(1.0).epsilon(1e-8));
    }
    SUBCASE("one- and two-displacement routes agree") {
        std::mt19937_64 rng(5);
        const TruncatedOperator rho = random_low_rank_state(rng, 48, 8, 3);
        for (complexd a : {complexd(0.4, 0.0), complexd(0.3, -0.9), complexd(1.1, 0.5)})
            CHECK(wigner_fn(rho, a) == doctest::Approx(wigner_two_displacements(rho, a)).epsilon(1e-9));
    }
    SUBCASE("hermitian-flagged input with a complex trace is rejected") {
        TruncatedOperator bad{6, 1, Matrix::Zero(6, 6), true, 0.0};
        bad.entries(0, 1) = complexd(0.0, 0.35);  // not Hermitian
        CHECK_THROWS_AS(wigner_fn(bad, complexd(0.2, 0.1)), numeric_error);
    }
}

TEST_CASE("husimi function") {
    SUBCASE("thermal closed form") {
        const double nu = 1.3;
        const TruncatedOperator th = make_state(StateSpec::thermal(nu), 100);
        for (double mag : {0.0, 0.8, 2.0}) {
            const complexd a(mag, 0.4 * mag);
            const double want = std::exp(-std::norm(a) / (nu + 1.0)) / (M_PI * (nu + 1.0));
            CHECK(husimi_fn(th, a) == doctest::Approx(want).epsilon(1e-9));
        }
    }
    SUBCASE("nonnegative and normalized for random states") {
        std::mt19937_64 rng(9);
        const TruncatedOperator rho = random_low_rank_state(rng, 40, 8, 3);
        const PhaseFunction q = husimi_function_of(rho);
        const PhaseGrid g = PhaseGrid::cartesian(7.0, 160);
        double integral = 0.0;
        for (size_t i = 0; i < g.points.size(); ++i) {
            const double v = q.eval(g.points[i]);
            CHECK(v >= 0.0);
            integral += g.weights[i] * v;
        }
        CHECK(integral == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("closed forms match the numeric evaluators on a grid") {
    // 41x41 cartesian sample of |alpha| <= 3
    std::vector<complexd> pts;
    for (int i = 0; i < 41; ++i)
        for (int j = 0; j < 41; ++j)
            pts.emplace_back(-3.0 + 6.0 * i / 40.0, -3.0 + 6.0 * j / 40.0);

    SUBCASE("thermal") {
        for (double nu : {0.0, 0.5, 1.0, 3.0}) {
            const TruncatedOperator th = make_state_auto(StateSpec::thermal(nu), 1e-14);
            const PhaseFunction w = wigner_function_of(th);
            double worst = 0.0;
            for (const complexd& a : pts)
                worst = std::max(worst, std::abs(w.eval(a) - wigner_thermal_cf(nu, a)));
            CHECK(worst < 1e-6);
        }
    }
    SUBCASE("fock via the dense displacement route") {
        for (int n : {0, 1, 2, 5, 10}) {
            const TruncatedOperator f = make_state(StateSpec::fock(n), 48);
            double worst = 0.0;
            for (int k = 0; k < 41; ++k) {
                const complexd a = pts[k * 41 + k];
                worst = std::max(worst, std::abs(wigner_fn(f, a) - wigner_fock_cf(n, a)));
            }
            CHECK(worst < 1e-6);
        }
    }
    SUBCASE("even and odd thermal") {
        for (double lam : {0.0, 0.5, 0.95}) {
            const TruncatedOperator e = make_state_auto(StateSpec::even_thermal(lam), 1e-14);
            const TruncatedOperator o = make_state_auto(StateSpec::odd_thermal(lam), 1e-14);
            const PhaseFunction we = wigner_function_of(e);
            const PhaseFunction wo = wigner_function_of(o);
            double worst = 0.0;
            for (const complexd& a : pts) {
                worst = std::max(worst, std::abs(we.eval(a) - wigner_even_thermal_cf(lam, a)));
                worst = std::max(worst, std::abs(wo.eval(a) - wigner_odd_thermal_cf(lam, a)));
            }
            CHECK(worst < 1e-6);
        }
    }
}

TEST_CASE("phase-space evaluators are single-mode only") {
    const TruncatedOperator psi = make_state(StateSpec::tmsv(0.3), 6);
    CHECK_THROWS_AS(characteristic_fn(psi, complexd(0.1, 0.0)), invalid_parameter);
    CHECK_THROWS_AS(husimi_fn(psi, complexd(0.1, 0.0)), invalid_parameter);
    CHECK_THROWS_AS(wigner_fn(psi, complexd(0.1, 0.0)), invalid_parameter);
}

TEST_CASE("radial evaluators depend only on |alpha|") {
    const TruncatedOperator th = make_state(StateSpec::thermal(0.9), 80);
    const PhaseFunction w = wigner_function_of(th);
    REQUIRE(w.radial);
    for (double mag : {0.3, 1.1, 2.4}) {
        const double a = w.eval(complexd(mag, 0.0));
        const double b = w.eval(complexd(0.0, mag));
        const double c = w.eval(complexd(mag * std::sqrt(0.5), -mag * std::sqrt(0.5)));
        CHECK(std::abs(a - b) < 1e-12);
        CHECK(std::abs(a - c) < 1e-12);
    }
}

TEST_CASE("phase grids") {
    SUBCASE("total weight equals the covered area") {
        const PhaseGrid radial = PhaseGrid::radial(5.0, 400);
        CHECK(radial.total_weight() == doctest::Approx(M_PI * 25.0).epsilon(1e-12));
        const PhaseGrid cart = PhaseGrid::cartesian(4.0, 96);
        CHECK(cart.total_weight() == doctest::Approx(64.0).epsilon(1e-12));
    }
    SUBCASE("vacuum Wigner integrates to one") {
        const TruncatedOperator vac = make_state(StateSpec::fock(0), 32);
        const PhaseFunction w = wigner_function_of(vac);
        CHECK(l1_phase_norm(w, PhaseGrid::radial(6.0, 400)) == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("fock-pair Wigner L1 distance hits 4/e") {
        const int d = 32;
        TruncatedOperator diff = make_state(StateSpec::fock(0), d);
        diff.entries -= make_state(StateSpec::fock(1), d).entries;
        const PhaseFunction w = wigner_function_of(diff);
        REQUIRE(w.radial);
        const double v = l1_phase_norm_converged(w, PhaseGrid::radial(6.5, 400));
        CHECK(0.5 * v == doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-8));
    }
    SUBCASE("thermal pair matches its closed form") {
        const int d = 64;
        TruncatedOperator diff = make_state(StateSpec::fock(0), d);
        diff.entries -= make_state(StateSpec::thermal(1.0), d).entries;
        const PhaseFunction w = wigner_function_of(diff);
        const double want = 2.0 / 3.0 / std::sqrt(3.0);  // thermal closed form at (0,1)
        CHECK(0.5 * l1_phase_norm_converged(w, PhaseGrid::radial(9.0, 400)) ==
              doctest::Approx(want).epsilon(1e-7));
    }
    SUBCASE("refinement is stable at convergence") {
        const TruncatedOperator th = make_state(StateSpec::thermal(0.6), 60);
        const PhaseFunction w = wigner_function_of(th);
        PhaseGrid g = PhaseGrid::radial(7.5, 400);
        const double a = l1_phase_norm(w, g);
        const double b = l1_phase_norm(w, g.refined());
        CHECK(std::abs(a - b) < 1e-6);
    }
    SUBCASE("polar grids reject non-radial evaluators") {
        PhaseFunction f;
        f.radial = false;
        f.eval = [](complexd a) { return a.real(); };
        CHECK_THROWS_AS(l1_phase_norm(f, PhaseGrid::radial(3.0, 64)), invalid_parameter);
    }
}

TEST_CASE("grid rim warning fires when mass leaks") {
    int hits = 0;
    auto old = set_warning_handler([&](Warning k, const std::string&) {
        if (k == Warning::grid_too_small) ++hits;
    });
    const TruncatedOperator th = make_state(StateSpec::thermal(2.0), 120);
    const PhaseFunction q = husimi_function_of(th);
    l1_phase_norm(q, PhaseGrid::radial(4.0, 200));  // far too small for nu=2
    CHECK(hits > 0);
    set_warning_handler(old);
}

TEST_CASE("characteristic function warns outside its reliable range") {
    int hits = 0;
    auto old = set_warning_handler([&](Warning k, const std::string&) {
        if (k == Warning::truncation_unreliable) ++hits;
    });
    const TruncatedOperator vac = make_state(StateSpec::fock(0), 16);
    characteristic_fn(vac, complexd(3.0, 0.0));  // |a|^2 = 9 > 16/4
    CHECK(hits == 1);
    set_warning_handler(old);
}

TEST_CASE("hermite wavefunctions") {
    SUBCASE("ground and first excited closed forms") {
        for (double x : {-1.3, 0.0, 0.4, 2.2}) {
            CHECK(hermite_wavefunction(0, x) ==
                  doctest::Approx(std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x)).epsilon(1e-13));
            CHECK(hermite_wavefunction(2, x) ==
                  doctest::Approx(std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x) *
                                  (2.0 * x * x - 1.0) / std::sqrt(2.0))
                      .epsilon(1e-12));
        }
    }
    SUBCASE("normalized far beyond n=150") {
        auto f = [](double x) {
            const double p = hermite_wavefunction(200, x);
            return p * p;
        };
        CHECK(integrate_adaptive(f, -25.0, 25.0, 1e-10) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("quadrature pdf") {
    SUBCASE("vacuum density") {
        const TruncatedOperator vac = make_state(StateSpec::fock(0), 16);
        for (double x : {0.0, 0.9, -1.7})
            CHECK(quadrature_pdf(vac, x) ==
                  doctest::Approx(std::exp(-x * x) / std::sqrt(M_PI)).epsilon(1e-12));
    }
    SUBCASE("thermal density matches the Gaussian closed form") {
        for (double nu : {0.5, 1.0, 3.0}) {
            const TruncatedOperator th = make_state_auto(StateSpec::thermal(nu), 1e-14);
            for (double x : {0.0, 0.7, 1.9, -3.2})
                CHECK(quadrature_pdf(th, x) ==
                      doctest::Approx(thermal_quadrature_pdf(nu, x)).epsilon(1e-8));
        }
    }
    SUBCASE("normalized and nonnegative for random states") {
        std::mt19937_64 rng(21);
        const TruncatedOperator rho = random_low_rank_state(rng, 36, 10, 4);
        auto f = [&](double x) { return quadrature_pdf(rho, x); };
        const double lim = std::sqrt(2.0 * 36);
        CHECK(integrate_adaptive(f, -lim, lim, 1e-10) == doctest::Approx(1.0).epsilon(1e-8));
        for (double x = -6.0; x <= 6.0; x += 0.37) CHECK(quadrature_pdf(rho, x) > -1e-10);
    }
    SUBCASE("thermal pdf variance is (2nu+1)/2") {
        const double nu = 1.2;
        auto f = [&](double x) { return x * x * thermal_quadrature_pdf(nu, x); };
        CHECK(integrate_adaptive(f, -30.0, 30.0, 1e-11) ==
              doctest::Approx(0.5 * (2.0 * nu + 1.0)).epsilon(1e-9));
    }
    SUBCASE("mehler anchor at the origin") {
        CHECK(thermal_quadrature_pdf(0.0, 0.0) == doctest::Approx(1.0 / std::sqrt(M_PI)));
    }
}
