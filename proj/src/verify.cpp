#include "cvhide/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "cvhide/channels.hpp"
#include "cvhide/commands.hpp"
#include "cvhide/discrimination.hpp"
#include "cvhide/phase_space.hpp"
#include "cvhide/quadrature.hpp"

namespace cvhide {

namespace {

class Suite {
public:
    explicit Suite(const std::string& only, int jobs) : only_(only), jobs_(jobs) {}

    std::vector<CheckResult> run() {
        check_constants();
        check_energy_planner();
        check_thermal_pairs();
        check_even_odd();
        check_fock_hom();
        check_coherent_pairs();
        check_channel_oracles();
        check_teleport_bounds();
        check_squeezed_noise();
        check_efficiency();
        check_oscillatory();
        check_determinism();
        return std::move(results_);
    }

private:
    bool wanted(const std::string& name) const {
        return only_.empty() || name.find(only_) != std::string::npos;
    }

    void equal(const std::string& name, const std::string& anchor, double got, double want,
               double tol) {
        if (!wanted(name)) return;
        CheckResult c{name, anchor, got, want, got - want, tol, std::abs(got - want) <= tol};
        results_.push_back(std::move(c));
    }

    // passes when lhs <= rhs + slack
    void leq(const std::string& name, const std::string& anchor, double lhs, double rhs,
             double slack) {
        if (!wanted(name)) return;
        CheckResult c{name, anchor, lhs, rhs, lhs - rhs, slack, lhs <= rhs + slack};
        results_.push_back(std::move(c));
    }

    void in_range(const std::string& name, const std::string& anchor, double value, double lo,
                  double hi) {
        if (!wanted(name)) return;
        CheckResult c{name, anchor, value, 0.5 * (lo + hi), value - 0.5 * (lo + hi),
                      0.5 * (hi - lo), value >= lo && value <= hi};
        results_.push_back(std::move(c));
    }

    double uniform(std::mt19937_64& rng) {
        return double(rng() >> 11) * 0x1.0p-53;
    }

    // random rank-k density matrix supported on the lowest `support` levels
    TruncatedOperator random_state(std::mt19937_64& rng, int dim, int support, int rank) {
        Matrix v(support, rank);
        for (int j = 0; j < rank; ++j)
            for (int i = 0; i < support; ++i) {
                // Box-Muller, hand-rolled for cross-run determinism
                const double u1 = std::max(uniform(rng), 1e-300), u2 = uniform(rng);
                const double m = std::sqrt(-2.0 * std::log(u1));
                v(i, j) = complexd(m * std::cos(2.0 * M_PI * u2), m * std::sin(2.0 * M_PI * u2));
            }
        Matrix g = v * v.adjoint();
        g /= g.trace().real();
        Matrix full = Matrix::Zero(dim, dim);
        full.block(0, 0, support, support) = g;
        return {dim, 1, std::move(full), true, 0.0};
    }

    // criterion 1
    void check_constants() {
        equal("cm.c1", "single-mode hiding constant equals 2/(27*pi)", c_m(1),
              2.0 / (27.0 * M_PI), 1e-12);
        for (int m = 4; m <= 10; ++m) {
            std::ostringstream name;
            name << "cm.small.m=" << m;
            leq(name.str(), "multimode hiding constant falls below 1e-6", c_m(m), 1e-6, 0.0);
        }
    }

    // criterion 2
    void check_energy_planner() {
        in_range("locc.plan_energy", "energy needed to push the LOCC bias below 1e-3",
                 plan_energy_for_hiding(1e-3, 1, 1.0), 5.35, 5.45);
    }

    SchemeSpec thermal_scheme(double nu, double mu) {
        const int dim = std::max(truncation_dim_for(StateSpec::thermal(nu), 1e-13),
                                 truncation_dim_for(StateSpec::thermal(mu), 1e-13));
        return SchemeSpec(make_state(StateSpec::thermal(nu), dim),
                          make_state(StateSpec::thermal(mu), dim));
    }

    // criteria 3 and 4
    void check_thermal_pairs() {
        const std::vector<double> nus = {0.0, 0.5, 1.0, 2.0};
        const std::vector<double> gaps = {0.5, 1.0, 3.0};
        struct Item { double nu, mu; };
        std::vector<Item> items;
        for (double nu : nus)
            for (double gap : gaps) items.push_back({nu, nu + gap});

        struct Numerics { double b1, wl1, het, hom; };
        std::vector<Numerics> nums(items.size());
        const bool any = wanted("thermal");
        if (any) {
            parallel_for(int(items.size()), jobs_, [&](int i) {
                const SchemeSpec s = thermal_scheme(items[i].nu, items[i].mu);
                nums[i] = {beta_1(s), wigner_l1_bound(s), beta_het(s), beta_hom(s)};
            });
        }
        double worst_het_violation = -1.0, worst_e_violation = -1.0;
        for (size_t i = 0; i < items.size(); ++i) {
            const auto [nu, mu] = items[i];
            const ThermalClosedForms cf = thermal_closed_forms(nu, mu);
            std::ostringstream tag;
            tag << ".nu=" << nu << ",mu=" << mu;
            if (any) {
                equal("thermal.trace" + tag.str(), "thermal pair trace-distance closed form",
                      nums[i].b1, cf.half_trace, 1e-6);
                equal("thermal.wigner" + tag.str(), "thermal pair Wigner-L1 closed form",
                      nums[i].wl1, cf.half_wigner_l1, 1e-6);
                equal("thermal.het" + tag.str(), "thermal pair heterodyne closed form",
                      nums[i].het, cf.half_het, 1e-6);
                equal("thermal.hom" + tag.str(), "thermal pair homodyne closed form",
                      nums[i].hom, cf.half_hom, 1e-6);
            }
            worst_het_violation = std::max(worst_het_violation, cf.half_het - cf.half_trace);
            worst_e_violation =
                std::max(worst_e_violation, cf.half_trace - std::exp(1.0) * cf.half_het);
        }
        std::mt19937_64 rng(20210915);
        for (int k = 0; k < 50; ++k) {
            const double nu = 5.0 * uniform(rng);
            const double mu = nu + 1e-4 + 10.0 * uniform(rng);
            const ThermalClosedForms cf = thermal_closed_forms(nu, mu);
            worst_het_violation = std::max(worst_het_violation, cf.half_het - cf.half_trace);
            worst_e_violation =
                std::max(worst_e_violation, cf.half_trace - std::exp(1.0) * cf.half_het);
        }
        leq("thermal.sandwich.het_le_b1", "heterodyne bias never beats the Helstrom bias",
            worst_het_violation, 0.0, 1e-9);
        leq("thermal.sandwich.b1_le_e_bhet", "Helstrom bias within a factor e of heterodyne",
            worst_e_violation, 0.0, 1e-9);
    }

    // criterion 5
    void check_even_odd() {
        if (!wanted("evenodd")) return;
        for (double lam : {0.0, 0.3, 0.6, 0.9}) {
            std::ostringstream tag;
            tag << ".lambda=" << lam;
            const int dim = truncation_dim_for(StateSpec::even_thermal(lam), 1e-12) + 1;
            const SchemeSpec s(make_state(StateSpec::even_thermal(lam), dim),
                               make_state(StateSpec::odd_thermal(lam), dim));
            equal("evenodd.trace" + tag.str(),
                  "even/odd pair is perfectly distinguishable", beta_1(s), 1.0, 1e-10);
            equal("evenodd.wigner_l1" + tag.str(),
                  "even/odd Wigner-L1 equals its closed form", wigner_l1_bound(s),
                  even_odd_gocc_bound(lam), 1e-4);
        }
    }

    // criterion 6
    void check_fock_hom() {
        if (!wanted("fock")) return;
        equal("fock.hom.n=0", "consecutive-Fock homodyne distance, exact value",
              fock_pair_hom_distance(0), std::sqrt(8.0 / M_PI) * std::exp(-0.5), 1e-6);
        const double asym = 8.0 / (M_PI * M_PI);
        std::vector<int> ns;
        for (int n = 10; n <= 100; n += 10) ns.push_back(n);
        std::vector<double> vals(ns.size());
        parallel_for(int(ns.size()), jobs_, [&](int i) { vals[i] = fock_pair_hom_distance(ns[i]); });
        for (size_t i = 0; i < ns.size(); ++i) {
            std::ostringstream name;
            name << "fock.hom.floor.n=" << ns[i];
            leq(name.str(), "consecutive-Fock homodyne distance stays above its floor",
                asym - 0.05, vals[i], 0.0);
        }
        equal("fock.hom.limit.n=100", "consecutive-Fock homodyne distance near its limit",
              vals.back(), asym, 0.03);
    }

    // criterion 7
    void check_coherent_pairs() {
        if (!wanted("coherent")) return;
        for (double a : {0.25, 0.5, 1.0}) {
            const CoherentPairBiases cf = coherent_pair_biases(a);
            const int dim =
                truncation_dim_for(StateSpec::coherent(complexd(a, 0.0)), 1e-13) + 8;
            const SchemeSpec s(make_state(StateSpec::coherent(complexd(a, 0.0)), dim),
                               make_state(StateSpec::coherent(complexd(-a, 0.0)), dim));
            std::ostringstream tag;
            tag << ".alpha=" << a;
            equal("coherent.beta1" + tag.str(), "coherent-pair Helstrom bias closed form",
                  beta_1(s), cf.beta_1, 1e-6);
            equal("coherent.hom" + tag.str(), "coherent-pair homodyne bias closed form",
                  beta_hom(s), cf.beta_gocc, 1e-6);
        }
    }

    // criterion 8
    void check_channel_oracles() {
        if (!wanted("channel")) return;
        std::mt19937_64 rng(424242);
        const int dim = 40;
        int idx = 0;
        for (double lam : {0.05, 0.2, 1.0}) {
            const TruncatedOperator rho = random_state(rng, dim, 8, 3);
            const TruncatedOperator fast = noise_channel_apply(rho, lam);
            const TruncatedOperator oracle = noise_channel_apply_integral(rho, lam, 61);
            const double delta = (fast.entries - oracle.entries).cwiseAbs().maxCoeff();
            std::ostringstream name;
            name << "channel.oracle.lambda=" << lam << ".state" << idx++;
            equal(name.str(), "noise channel fast path equals the displacement integral",
                  delta, 0.0, 1e-6);
        }
        {
            const TruncatedOperator rho = random_state(rng, dim, 8, 3);
            const TruncatedOperator once =
                noise_channel_apply(noise_channel_apply(rho, 0.45), 0.3);
            const TruncatedOperator joint = noise_channel_apply(rho, 0.75);
            equal("channel.semigroup", "noise channel composes additively in lambda",
                  (once.entries - joint.entries).cwiseAbs().maxCoeff(), 0.0, 1e-6);
        }
        {
            const TruncatedOperator rho = random_state(rng, dim, 8, 4);
            const double eta = 0.7;
            const TruncatedOperator lossy = pure_loss_apply(rho, eta);
            const complexd pts[9] = {{0.0, 0.0}, {0.4, 0.0},  {0.8, 0.0},
                                     {0.0, 0.4}, {0.0, 0.8},  {0.4, 0.4},
                                     {-0.5, 0.0}, {0.3, -0.6}, {1.0, 0.0}};
            double worst = 0.0;
            for (const complexd& a : pts) {
                const complexd got = characteristic_fn(lossy, a);
                const complexd want = characteristic_fn(rho, std::sqrt(eta) * a) *
                                      std::exp(-0.5 * (1.0 - eta) * std::norm(a));
                worst = std::max(worst, std::abs(got - want));
            }
            equal("channel.loss_chi", "pure loss acts on the characteristic function by scaling",
                  worst, 0.0, 1e-6);
        }
    }

    // criterion 9
    void check_teleport_bounds() {
        if (!wanted("bk")) return;
        std::vector<StateSpec> specs;
        for (int n = 0; n <= 5; ++n) specs.push_back(StateSpec::fock(n));
        for (double nu : {0.5, 1.0, 2.0}) specs.push_back(StateSpec::thermal(nu));
        for (double a : {0.5, 1.0}) specs.push_back(StateSpec::coherent(complexd(a, 0.0)));
        double worst_num_vs_refined = -10.0, worst_refined_vs_linear = -10.0;
        const std::vector<double> lams = {0.01, 0.1, 0.5};
        std::vector<double> worst_nr(specs.size(), -10.0), worst_rl(specs.size(), -10.0);
        parallel_for(int(specs.size()), jobs_, [&](int i) {
            const StateSpec& sp = specs[i];
            const int dim = truncation_dim_for(sp, 1e-12) + 40;
            const TruncatedOperator rho = make_state(sp, dim);
            const double energy = mean_photon_number(rho);
            for (double lam : lams) {
                TruncatedOperator out = noise_channel_apply(rho, lam);
                out.entries -= rho.entries;
                const double err = trace_norm_matrix(out.entries, true);
                const double refined = bk_error_bound_refined(energy, 1, lam);
                const double linear = bk_error_bound_linear(energy, 1, lam);
                worst_nr[i] = std::max(worst_nr[i], err - refined);
                worst_rl[i] = std::max(worst_rl[i], refined - linear);
            }
        });
        for (size_t i = 0; i < specs.size(); ++i) {
            worst_num_vs_refined = std::max(worst_num_vs_refined, worst_nr[i]);
            worst_refined_vs_linear = std::max(worst_refined_vs_linear, worst_rl[i]);
        }
        leq("bk.numeric_le_refined", "channel error stays below the refined bound",
            worst_num_vs_refined, 0.0, 1e-9);
        leq("bk.refined_le_linear", "refined bound stays below the linear bound",
            worst_refined_vs_linear, 0.0, 1e-9);
        leq("bk.vanish_lambda_to_0", "both bounds vanish with the noise parameter",
            std::max(bk_error_bound_refined(1.0, 1, 1e-12), bk_error_bound_linear(1.0, 1, 1e-12)),
            1e-5, 0.0);
        double worst_mono = -10.0;
        const double lgrid[4] = {0.01, 0.1, 0.5, 1.0};
        for (int m : {1, 2}) {
            for (int i = 0; i + 1 < 4; ++i) {
                worst_mono = std::max(worst_mono, bk_error_bound_refined(1.0, m, lgrid[i]) -
                                                      bk_error_bound_refined(1.0, m, lgrid[i + 1]));
                worst_mono = std::max(worst_mono, bk_error_bound_linear(1.0, m, lgrid[i]) -
                                                      bk_error_bound_linear(1.0, m, lgrid[i + 1]));
            }
            for (double e : {0.0, 1.0}) {
                worst_mono = std::max(worst_mono, bk_error_bound_refined(e, m, 0.1) -
                                                      bk_error_bound_refined(e + 1.0, m, 0.1));
                worst_mono = std::max(worst_mono, bk_error_bound_linear(e, m, 0.1) -
                                                      bk_error_bound_linear(e + 1.0, m, 0.1));
            }
        }
        leq("bk.monotone", "bounds nondecreasing in noise and energy", worst_mono, 0.0, 1e-12);
    }

    // criterion 10 (the 1.3 threshold check is expected to fail; see notes)
    void check_squeezed_noise() {
        if (!wanted("squeezed")) return;
        const double lam = 0.1;
        std::vector<double> rs = {0.0, 0.5, 1.0, 1.5};
        std::vector<SqueezedNoiseBound> bounds(rs.size());
        parallel_for(int(rs.size()), jobs_,
                     [&](int i) { bounds[i] = squeezed_noise_lower_bound(rs[i], lam); });
        for (size_t i = 0; i < rs.size(); ++i) {
            std::ostringstream name;
            name << "squeezed.numeric_ge_analytic.r=" << rs[i];
            leq(name.str(), "squeezed-state noise response beats its analytic floor",
                bounds[i].analytic, bounds[i].numeric, 1e-6);
        }
        leq("squeezed.analytic_exceeds_1.3.r=1.5", "analytic floor exceeds 1.3 at r=1.5", 1.3,
            bounds[3].analytic, 0.0);
        double worst = -10.0;
        for (size_t i = 0; i + 1 < rs.size(); ++i)
            worst = std::max(worst, bounds[i].analytic - bounds[i + 1].analytic);
        leq("squeezed.trend_to_2", "analytic floor increases with squeezing toward 2", worst, 0.0, 0.0);
    }

    // criterion 11
    void check_efficiency() {
        if (!wanted("lossy")) return;
        for (double lam : {0.5, 0.9, 0.99}) {
            for (double eta : {0.5, 0.8, 0.95}) {
                const EfficiencyBias b = efficiency_bias(lam, eta);
                std::ostringstream name;
                name << "lossy.bound.lambda=" << lam << ",eta=" << eta;
                leq(name.str(), "lossy-detector bias below the two-term bound", b.numeric,
                    b.bound, 1e-6);
            }
        }
        equal("lossy.eta1_recovers_1", "ideal detectors distinguish the even/odd pair",
              efficiency_bias(0.9, 1.0).numeric, 1.0, 1e-10);
    }

    // criterion 12
    void check_oscillatory() {
        if (!wanted("oscillatory")) return;
        const int ns[4] = {50, 100, 200, 400};
        double deltas[4];
        for (int i = 0; i < 4; ++i)
            deltas[i] = std::abs(oscillatory_integral_check(0.3, 2.0, ns[i]).delta);
        for (int i = 0; i + 1 < 4; ++i) {
            std::ostringstream name;
            name << "oscillatory.decay.n=" << ns[i] << "to" << ns[i + 1];
            leq(name.str(), "oscillatory-integral deviation decays with n", deltas[i + 1],
                deltas[i], 0.0);
        }
        leq("oscillatory.small_at_400", "oscillatory-integral deviation small at n=400",
            deltas[3], 0.02, 0.0);
    }

    // in-process half of criterion 13 (the CLI round trip is exercised end to end
    // by the acceptance suite)
    void check_determinism() {
        if (!wanted("determinism")) return;
        const std::vector<double> nus = {0.0, 1.0};
        const std::vector<double> mus = {0.5, 2.0};
        const std::string a = to_csv(thermal_table(nus, mus, 1e-12, 1));
        const std::string b = to_csv(thermal_table(nus, mus, 1e-12, 1));
        equal("determinism.repeat", "identical runs give byte-identical tables",
              a == b ? 0.0 : 1.0, 0.0, 0.0);
        const std::string c = to_csv(thermal_table(nus, mus, 1e-12, 4));
        equal("determinism.parallel", "parallel and serial runs give identical tables",
              a == c ? 0.0 : 1.0, 0.0, 0.0);
    }

    std::string only_;
    int jobs_;
    std::vector<CheckResult> results_;
};

} // namespace

std::vector<CheckResult> run_verification(const std::string& only, int jobs) {
    Suite suite(only, jobs);
    return suite.run();
}

std::string verification_report(const std::vector<CheckResult>& results) {
    std::ostringstream os;
    int failed = 0;
    for (const auto& c : results) {
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  (" << c.anchor << ")  value="
           << format_sig12(c.lhs) << " reference=" << format_sig12(c.rhs)
           << " delta=" << format_sig12(c.delta) << " tol=" << format_sig12(c.tol) << '\n';
        if (!c.pass) ++failed;
    }
    os << results.size() << " checks, " << (results.size() - failed) << " passed, " << failed
       << " failed\n";
    return os.str();
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& c : results)
        if (!c.pass) return false;
    return true;
}

} // namespace cvhide
