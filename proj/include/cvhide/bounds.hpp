#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cvhide/operators.hpp"

namespace cvhide {

struct BoundReport {
    std::string name;
    std::map<std::string, double> inputs;
    double value = 0.0;            // capped at the trace-norm ceiling 2
    double raw = 0.0;              // uncapped
    std::optional<double> companion_numeric;
};

// γ_E = √E + √(E+1).
double gamma_e(double energy);

// Energy as a function of γ: the algebraic inverse ((γ²−1)/(2γ))².
double energy_of_gamma(double gamma);

// Linear teleportation-error bound (2Γ(m+½)/(m−1)!)·γ_E·√λ, capped at 2.
double bk_error_bound_linear(double energy, int m, double lambda);
double bk_error_bound_linear_raw(double energy, int m, double lambda);

// Two-parameter form with |√λ − √λ'| (internal; λ' = 0 recovers the above).
double bk_error_bound_linear_general(double energy, int m, double lambda, double lambda_prime);

// Refined bound 2·∫₀^∞ f(x,2m)·sin(min{γ_E√(λx/2), π/2})dx with the chi-square
// density f(x,2m) = x^{m−1}e^{−x/2}/(2^m Γ(m)); adaptive quadrature with the
// exponential tail cut below 1e-14. Capped at 2.
double bk_error_bound_refined(double energy, int m, double lambda);

// ‖D_α − D_β‖ bound 2·sin(min{γ_E|α−β|, π/2}).
double displacement_diamond_bound(complexd alpha, complexd beta, double energy);

// c_m = (1/(4^{m+1}m))·(2m/(2m+1))^{2m+1}·((m−1)!/Γ(m+½))^{2m}, via log-Gamma.
double c_m(int m);

// Lower bound c_m·β₁^{2m+1}/γ_E^{2m} on the LOCC bias.
double locc_bound(double beta_1, double energy, int m);

// Solves locc_bound(β₁, E, m) = beta_target for E.
double plan_energy_for_hiding(double beta_target, int m, double beta_1);

// Resource planning query on the teleportation bounds.
struct BudgetQuery {
    double target_epsilon = 0.0;  // accuracy in trace norm, (0,2)
    double energy = 0.0;
    int m = 1;
    enum class Fixed { eta, r } fixed = Fixed::eta;
    double eta = 1.0;
    double r = 0.0;
    bool use_refined = false;  // bisect the refined bound instead of inverting the linear one
};

struct BudgetPlan {
    double lambda_star = 0.0;   // largest admissible noise parameter
    double r = 0.0;             // required squeezing (fixed-η queries)
    double squeezing_db = 0.0;
    double eta = 1.0;           // required efficiency (fixed-r queries)
};

BudgetPlan plan_teleport_budget(const BudgetQuery& query);

// max over the λ grid of (λ/(2−λ))·‖(N_λ⊗I)(Z)‖₁; Z single-mode or two-mode
// with the channel acting on mode A. Default grid: 64 log-spaced points in
// [1e-3, 1].
struct LoccLowerBound {
    double value = 0.0;
    double argmax_lambda = 0.0;
};
LoccLowerBound locc_lower_bound_numeric(const TruncatedOperator& z,
                                        const std::vector<double>& lambda_grid = {});
std::vector<double> default_lambda_grid();

// Squeezed-state lower bound on ‖N_λ − I‖: analytic
// 2 − 2/√((1+λe^{2r}/2)(1+λe^{−2r}/2)) against the numeric trace norm at a
// cutoff of at least 20·e^{2r}.
struct SqueezedNoiseBound {
    double analytic = 0.0;
    double numeric = 0.0;
    int cutoff = 0;
};
SqueezedNoiseBound squeezed_noise_lower_bound(double r, double lambda);
double squeezed_noise_lower_bound_analytic(double r, double lambda);

// D_m(E) = C(m+E, m), the number of m-mode Fock states with total photon
// number at most E, plus the E^m/m! lower bound.
struct DimensionCount {
    boost::multiprecision::cpp_int count;
    double lower_bound = 0.0;
};
DimensionCount dimension_count(int m, long long energy);

} // namespace cvhide
