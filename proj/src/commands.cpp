#include "cvhide/commands.hpp"

#include <cmath>
#include <sstream>

#include "cvhide/discrimination.hpp"

namespace cvhide {

Table thermal_table(const std::vector<double>& nu_values, const std::vector<double>& mu_values,
                    double tail_tol, int jobs) {
    Table t;
    t.columns = {"nu", "mu", "n0", "half_trace_cf", "half_trace_num", "delta_trace",
                 "half_wl1_cf", "half_wl1_num", "delta_wl1", "half_het_cf", "half_het_num",
                 "delta_het", "half_hom_cf", "half_hom_num", "delta_hom", "ratio_b1_bhet",
                 "cutoff"};
    struct Pair { double nu, mu; };
    std::vector<Pair> pairs;
    for (double nu : nu_values)
        for (double mu : mu_values)
            if (mu > nu) pairs.push_back({nu, mu});
    t.rows.resize(pairs.size());
    t.cutoffs.resize(pairs.size());
    parallel_for(int(pairs.size()), jobs, [&](int i) {
        const auto [nu, mu] = pairs[i];
        const BiasReport r = thermal_bias_report(nu, mu, tail_tol);
        const ThermalClosedForms& cf = *r.closed;
        t.rows[i] = {format_sig12(nu),
                     format_sig12(mu),
                     std::to_string(cf.n0),
                     format_sig12(cf.half_trace),
                     format_sig12(r.beta_1),
                     format_sig12(r.deltas.at("trace")),
                     format_sig12(cf.half_wigner_l1),
                     format_sig12(r.wigner_l1_half),
                     format_sig12(r.deltas.at("wigner_l1")),
                     format_sig12(cf.half_het),
                     format_sig12(r.beta_het),
                     format_sig12(r.deltas.at("het")),
                     format_sig12(cf.half_hom),
                     format_sig12(r.beta_hom),
                     format_sig12(r.deltas.at("hom")),
                     format_sig12(cf.half_trace / cf.half_het),
                     std::to_string(r.cutoff)};
        t.cutoffs[i] = std::to_string(r.cutoff);
    });
    t.grids = {"radial, auto extent, converged refinement"};
    return t;
}

Table even_odd_table(const std::vector<double>& lambda_values, double tail_tol, int jobs) {
    Table t;
    t.columns = {"lambda", "beta_1", "half_wl1_num", "gocc_bound_cf", "delta", "cutoff"};
    t.rows.resize(lambda_values.size());
    t.cutoffs.resize(lambda_values.size());
    parallel_for(int(lambda_values.size()), jobs, [&](int i) {
        const double lam = lambda_values[i];
        const int dim = truncation_dim_for(StateSpec::even_thermal(lam), tail_tol) + 1;
        const SchemeSpec scheme(make_state(StateSpec::even_thermal(lam), dim),
                                make_state(StateSpec::odd_thermal(lam), dim));
        const double b1 = beta_1(scheme);
        const double wl1 = wigner_l1_bound(scheme);
        const double cf = even_odd_gocc_bound(lam);
        t.rows[i] = {format_sig12(lam),      format_sig12(b1), format_sig12(wl1),
                     format_sig12(cf),       format_sig12(wl1 - cf),
                     std::to_string(dim)};
        t.cutoffs[i] = std::to_string(dim);
    });
    t.grids = {"radial, auto extent, converged refinement"};
    return t;
}

Table fock_hom_table(const std::vector<long long>& n_values, int jobs) {
    Table t;
    t.columns = {"n", "hom_l1", "asymptote", "delta"};
    const double asym = 8.0 / (M_PI * M_PI);
    t.rows.resize(n_values.size());
    parallel_for(int(n_values.size()), jobs, [&](int i) {
        const int n = int(n_values[i]);
        const double v = fock_pair_hom_distance(n);
        t.rows[i] = {std::to_string(n), format_sig12(v), format_sig12(asym),
                     format_sig12(v - asym)};
    });
    t.grids = {"composite panel quadrature, doubled to convergence"};
    return t;
}

Table bk_budget_table(const std::vector<double>& eps_values, const BudgetQuery& base) {
    Table t;
    const bool fixed_eta = base.fixed == BudgetQuery::Fixed::eta;
    t.columns = {"E", "m", "eps", fixed_eta ? "eta" : "r_fixed",
                 "lambda_star", fixed_eta ? "r" : "eta_required", "squeezing_db"};
    for (double eps : eps_values) {
        BudgetQuery q = base;
        q.target_epsilon = eps;
        const BudgetPlan plan = plan_teleport_budget(q);
        t.rows.push_back({format_sig12(q.energy), std::to_string(q.m), format_sig12(eps),
                          format_sig12(fixed_eta ? q.eta : q.r), format_sig12(plan.lambda_star),
                          format_sig12(fixed_eta ? plan.r : plan.eta),
                          format_sig12(plan.squeezing_db)});
    }
    t.grids = {base.use_refined ? "refined bound bisection" : "linear bound inversion"};
    return t;
}

Table locc_bound_table(double beta_1_value, const std::vector<double>& energy_values, int m) {
    Table t;
    t.columns = {"beta_1", "E", "m", "gamma_E", "c_m", "locc_lower_bound"};
    for (double e : energy_values) {
        t.rows.push_back({format_sig12(beta_1_value), format_sig12(e), std::to_string(m),
                          format_sig12(gamma_e(e)), format_sig12(c_m(m)),
                          format_sig12(locc_bound(beta_1_value, e, m))});
    }
    return t;
}

} // namespace cvhide
