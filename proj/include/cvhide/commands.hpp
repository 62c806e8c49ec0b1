#pragma once

#include "cvhide/bounds.hpp"
#include "cvhide/report.hpp"

namespace cvhide {

// Table builders behind the CLI subcommands; also reused by the
// verification suite's determinism checks. Rows are computed independently
// (optionally in parallel) and emitted in input order.

Table thermal_table(const std::vector<double>& nu_values, const std::vector<double>& mu_values,
                    double tail_tol = 1e-12, int jobs = 1);

Table even_odd_table(const std::vector<double>& lambda_values, double tail_tol = 1e-12,
                     int jobs = 1);

Table fock_hom_table(const std::vector<long long>& n_values, int jobs = 1);

Table bk_budget_table(const std::vector<double>& eps_values, const BudgetQuery& base);

Table locc_bound_table(double beta_1_value, const std::vector<double>& energy_values, int m);

} // namespace cvhide
