#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <random>

#include "cvhide/channels.hpp"
#include "cvhide/states.hpp"

using namespace cvhide;

namespace {

// independent oracle: D(alpha) as a dense matrix exponential
Matrix displacement_expm(complexd alpha, int dim) {
    const LadderSet l = ladder_matrices(dim);
    const Matrix gen = alpha * l.a_dag.entries - std::conj(alpha) * l.a.entries;
    return gen.exp();
}

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

} // namespace

TEST_CASE("ladder matrices at dim 3") {
    const LadderSet l = ladder_matrices(3);
    CHECK(l.a.entries(0, 1).real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(l.a.entries(1, 2).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(std::abs(l.a.entries(0, 0)) == 0.0);
    CHECK(std::abs(l.a.entries(2, 1)) == 0.0);
    const Matrix n = l.a_dag.entries * l.a.entries;
    for (int k = 0; k < 3; ++k) CHECK(std::abs(n(k, k) - double(k)) < 1e-14);
    CHECK((n - l.n.entries).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("number operator eigenvalue on |2>") {
    const LadderSet l = ladder_matrices(5);
    Vector v = Vector::Zero(5);
    v(2) = 1.0;
    CHECK((l.n.entries * v - 2.0 * v).norm() < 1e-15);
}

TEST_CASE("canonical commutator is i on the interior block") {
    const int d = 20;
    const LadderSet l = ladder_matrices(d);
    const Matrix comm = l.x.entries * l.p.entries - l.p.entries * l.x.entries;
    const complexd i_unit(0.0, 1.0);
    // truncation corrupts only the last diagonal entry
    for (int m = 0; m < d - 1; ++m)
        for (int n = 0; n < d - 1; ++n) {
            const complexd want = m == n ? i_unit : complexd(0.0, 0.0);
            CHECK(std::abs(comm(m, n) - want) < 1e-13);
        }
    CHECK(std::abs(comm(d - 1, d - 1) + i_unit * double(d - 1)) < 1e-12);
}

TEST_CASE("ladder matrices reject dim below 2") {
    CHECK_THROWS_AS(ladder_matrices(1), invalid_parameter);
}

TEST_CASE("displacement at zero is the identity") {
    const TruncatedOperator d = displacement_matrix(complexd(0.0, 0.0), 12);
    CHECK((d.entries - Matrix::Identity(12, 12)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("displacement column zero carries coherent amplitudes") {
    const complexd alpha(0.7, -0.4);
    const int d = 40;
    const TruncatedOperator dm = displacement_matrix(alpha, d);
    const Vector c = coherent_amplitudes(alpha, d);
    CHECK((dm.entries.col(0) - c).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("displacement matrix equals the matrix-exponential oracle") {
    const int d = 40;
    for (complexd alpha : {complexd(0.5, 0.0), complexd(0.3, -0.8), complexd(0.0, 1.0)}) {
        const TruncatedOperator fast = displacement_matrix(alpha, d);
        const Matrix oracle = displacement_expm(alpha, d);
        // columns well inside the cutoff are exact up to the oracle's own error
        CHECK((fast.entries.leftCols(16) - oracle.leftCols(16)).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("Weyl relation on the interior block") {
    const int d = 80;
    const struct { complexd a, b; } pairs[] = {
        {{0.5, 0.0}, {0.3, 0.0}},
        {{1.0, 0.0}, {1.0, 0.0}},
        {{0.5, 0.5}, {-0.3, 0.2}},
        {{0.0, 1.0}, {1.0, 0.0}},
    };
    for (const auto& [a, b] : pairs) {
        const Matrix lhs = displacement_matrix(a, d).entries * displacement_matrix(b, d).entries;
        const complexd phase = std::exp(0.5 * (a * std::conj(b) - std::conj(a) * b));
        const Matrix rhs = phase * displacement_matrix(a + b, d).entries;
        CHECK((lhs.block(0, 0, 40, 40) - rhs.block(0, 0, 40, 40)).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("displacement conjugation translates the annihilator") {
    const int d = 64;
    const LadderSet l = ladder_matrices(d);
    for (complexd alpha : {complexd(0.5, 0.0), complexd(0.4, 0.6), complexd(1.0, 0.0)}) {
        const Matrix dm = displacement_matrix(alpha, d).entries;
        const Matrix lhs = dm.adjoint() * l.a.entries * dm;
        const double mag = std::abs(alpha);
        // corruption reaches about 2|alpha|sqrt(d) + O(d^(1/3)) below the cutoff
        const int k = d - int(std::ceil(2.0 * mag * std::sqrt(double(d)) +
                                        2.2 * std::cbrt(double(d)) + mag * mag));
        REQUIRE(k > 8);
        Matrix want = l.a.entries.block(0, 0, k, k);
        want += alpha * Matrix::Identity(k, k);
        CHECK((lhs.block(0, 0, k, k) - want).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("make_state basics") {
    SUBCASE("vacuum is a one-hot diagonal") {
        const TruncatedOperator v = make_state(StateSpec::fock(0), 4);
        CHECK(v.entries(0, 0).real() == doctest::Approx(1.0));
        CHECK(v.entries.cwiseAbs().sum() == doctest::Approx(1.0));
    }
    SUBCASE("thermal(1) has geometric diagonal (1/2)(1/2)^k") {
        const TruncatedOperator t = make_state(StateSpec::thermal(1.0), 40);
        for (int k = 0; k < 10; ++k)
            CHECK(t.entries(k, k).real() ==
                  doctest::Approx(0.5 * std::pow(0.5, k)).epsilon(1e-10));
    }
    SUBCASE("degenerate families collapse to pure states") {
        const TruncatedOperator e0 = make_state(StateSpec::even_thermal(0.0), 8);
        CHECK(e0.entries(0, 0).real() == doctest::Approx(1.0));
        const TruncatedOperator t0 = make_state(StateSpec::tmsv(0.0), 6);
        CHECK(t0.modes == 2);
        CHECK(t0.entries(0, 0).real() == doctest::Approx(1.0));
        CHECK(t0.entries.cwiseAbs().sum() == doctest::Approx(1.0));
    }
    SUBCASE("out-of-range parameters are rejected") {
        CHECK_THROWS_AS(StateSpec::thermal(-0.1), invalid_parameter);
        CHECK_THROWS_AS(StateSpec::even_thermal(1.0), invalid_parameter);
        CHECK_THROWS_AS(StateSpec::fock(-1), invalid_parameter);
        CHECK_THROWS_AS(make_state(StateSpec::fock(9), 6), invalid_parameter);
    }
}

TEST_CASE("every constructed family is a valid state") {
    for (const StateSpec& spec :
         {StateSpec::fock(3), StateSpec::coherent(complexd(0.8, 0.3)), StateSpec::thermal(1.5),
          StateSpec::squeezed(0.8), StateSpec::tmsv(0.7), StateSpec::even_thermal(0.6),
          StateSpec::odd_thermal(0.6)}) {
        const TruncatedOperator rho = make_state_auto(spec);
        CHECK_NOTHROW(check_state(rho));
        CHECK(trace_norm(rho) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(rho.renorm_delta < 1e-11);
    }
}

TEST_CASE("truncation_dim_for honors the analytic tails") {
    SUBCASE("thermal(1) at 1e-12 gives the first dim with 2^-d below it") {
        CHECK(truncation_dim_for(StateSpec::thermal(1.0), 1e-12) == 40);
    }
    SUBCASE("fock has finite support clamped to 8") {
        CHECK(truncation_dim_for(StateSpec::fock(2), 1e-12) == 8);
        CHECK(truncation_dim_for(StateSpec::fock(20), 1e-12) == 21);
    }
    SUBCASE("even thermal tail uses the lambda^2 geometric rate") {
        const int d = truncation_dim_for(StateSpec::even_thermal(0.9), 1e-12);
        CHECK(truncation_tail_mass(StateSpec::even_thermal(0.9), d) < 1e-12);
        CHECK(truncation_tail_mass(StateSpec::even_thermal(0.9), d - 1) >= 1e-12);
        CHECK(std::pow(0.81, std::ceil(d / 2.0)) < 1e-12);
    }
    SUBCASE("minimality and floor for every family") {
        for (const StateSpec& spec :
             {StateSpec::thermal(0.3), StateSpec::coherent(complexd(1.2, 0.0)),
              StateSpec::squeezed(1.0), StateSpec::tmsv(0.9), StateSpec::odd_thermal(0.5)}) {
            const int d = truncation_dim_for(spec, 1e-12);
            CHECK(d >= 8);
            CHECK(truncation_tail_mass(spec, d) < 1e-12);
        }
    }
    SUBCASE("tail tolerance range is enforced") {
        CHECK_THROWS_AS(truncation_dim_for(StateSpec::thermal(1.0), 0.5), invalid_parameter);
    }
}

TEST_CASE("trace norm") {
    SUBCASE("orthogonal pure states sit at distance 2") {
        const int d = 8;
        const TruncatedOperator f0 = make_state(StateSpec::fock(0), d);
        const TruncatedOperator f1 = make_state(StateSpec::fock(1), d);
        TruncatedOperator diff = f0;
        diff.entries -= f1.entries;
        CHECK(0.5 * trace_norm(diff) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("thermal pair (0,1) half distance is 1/2") {
        const int d = 48;
        TruncatedOperator diff = make_state(StateSpec::fock(0), d);
        diff.entries -= make_state(StateSpec::thermal(1.0), d).entries;
        CHECK(0.5 * trace_norm(diff) == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("non-Hermitian input goes through the dilation") {
        Matrix m(2, 2);
        m << complexd(0, 0), complexd(3, 4), complexd(0, 0), complexd(0, 0);
        CHECK(trace_norm_matrix(m, false) == doctest::Approx(5.0).epsilon(1e-12));
    }
    SUBCASE("non-finite entries are rejected") {
        Matrix m = Matrix::Zero(2, 2);
        m(0, 0) = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(trace_norm_matrix(m, true), numeric_error);
    }
    SUBCASE("unitary invariance under truncated displacements") {
        std::mt19937_64 rng(7);
        const int d = 48;
        for (int trial = 0; trial < 4; ++trial) {
            const TruncatedOperator rho = random_low_rank_state(rng, d, 10, 4);
            const TruncatedOperator sig = random_low_rank_state(rng, d, 10, 4);
            Matrix z = rho.entries - 0.7 * sig.entries;
            const complexd alpha(0.6 * uniform(rng), 0.6 * uniform(rng));
            const Matrix u = displacement_matrix(alpha, d).entries;
            CHECK(trace_norm_matrix(u * z * u.adjoint(), true) ==
                  doctest::Approx(trace_norm_matrix(z, true)).epsilon(1e-8));
        }
    }
    SUBCASE("triangle inequality on random Hermitian pairs") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 6; ++trial) {
            const TruncatedOperator a = random_low_rank_state(rng, 24, 12, 5);
            const TruncatedOperator b = random_low_rank_state(rng, 24, 12, 5);
            const double ta = trace_norm(a), tb = trace_norm(b);
            CHECK(trace_norm_matrix(a.entries + b.entries, true) <= ta + tb + 1e-10);
        }
    }
}

TEST_CASE("mean photon number") {
    CHECK(mean_photon_number(make_state(StateSpec::thermal(1.7), 120)) ==
          doctest::Approx(1.7).epsilon(1e-8));
    CHECK(mean_photon_number(make_state(StateSpec::fock(4), 8)) == doctest::Approx(4.0));
    const double r = 0.9;
    const TruncatedOperator psi = make_state_auto(StateSpec::tmsv(r));
    const TruncatedOperator reduced = partial_trace_b(psi);
    CHECK(mean_photon_number(reduced) ==
          doctest::Approx(std::pow(std::sinh(r), 2)).epsilon(1e-9));
    // total photon number of the two-mode state is twice the local one
    CHECK(mean_photon_number(psi) ==
          doctest::Approx(2.0 * std::pow(std::sinh(r), 2)).epsilon(1e-9));
}

TEST_CASE("irreducible energy") {
    SUBCASE("coherent states carry none") {
        const TruncatedOperator c = make_state_auto(StateSpec::coherent(complexd(0.9, -0.4)));
        CHECK(irreducible_energy(c) == doctest::Approx(0.0).epsilon(1e-8));
    }
    SUBCASE("thermal states keep all of it") {
        const TruncatedOperator t = make_state_auto(StateSpec::thermal(0.8));
        CHECK(irreducible_energy(t) == doctest::Approx(0.8).epsilon(1e-8));
    }
    SUBCASE("displacement covariance") {
        const TruncatedOperator t = make_state(StateSpec::thermal(0.8), 120);
        for (complexd beta : {complexd(0.7, 0.0), complexd(-0.3, 0.5)}) {
            const TruncatedOperator moved = displacement_channel_apply(t, beta);
            CHECK(irreducible_energy(moved) == doctest::Approx(0.8).epsilon(1e-6));
        }
    }
}

TEST_CASE("schmidt robustness") {
    const int d = 24;
    SUBCASE("product state") {
        Vector psi = Vector::Zero(d * d);
        psi(2 * d + 3) = 1.0;  // |2>|3>
        CHECK(schmidt_robustness(psi, d) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("bell pair gives 2") {
        Vector psi = Vector::Zero(d * d);
        psi(0) = 1.0 / std::sqrt(2.0);
        psi(d + 1) = 1.0 / std::sqrt(2.0);
        CHECK(schmidt_robustness(psi, d) == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("two-mode squeezed vacuum gives e^{2r}") {
        for (double r : {0.4, 0.9, 1.3}) {
            // the robustness sums amplitudes, not weights; double the cutoff
            const int dim = 2 * truncation_dim_for(StateSpec::tmsv(r), 1e-14);
            Vector psi = state_vector(StateSpec::tmsv(r), dim);
            psi /= psi.norm();
            CHECK(schmidt_robustness(psi, dim) ==
                  doctest::Approx(std::exp(2.0 * r)).epsilon(1e-8));
        }
    }
    SUBCASE("unnormalized vectors are rejected") {
        Vector bad = Vector::Zero(d * d);
        bad(0) = 0.7;
        CHECK_THROWS_AS(schmidt_robustness(bad, d), invalid_parameter);
    }
}

TEST_CASE("downstream scalars are stable under cutoff growth") {
    const StateSpec spec = StateSpec::thermal(1.0);
    const int d = truncation_dim_for(spec, 1e-12);
    const TruncatedOperator a = make_state(spec, d);
    const TruncatedOperator b = make_state(spec, d + 30);
    // the energy-weighted tail sits two orders above the probability tail
    CHECK(std::abs(mean_photon_number(a) - mean_photon_number(b)) < 1e-9);
    TruncatedOperator da = a, db = b;
    da.entries(0, 0) -= 1.0;  // against vacuum
    db.entries(0, 0) -= 1.0;
    CHECK(std::abs(trace_norm(da) - trace_norm(db)) < 1e-10);
}
