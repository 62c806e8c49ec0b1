#include "cvhide/bounds.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <sstream>

#include "cvhide/channels.hpp"
#include "cvhide/quadrature.hpp"
#include "cvhide/states.hpp"

namespace cvhide {

double gamma_e(double energy) {
    if (energy < 0.0) throw invalid_parameter("gamma_e: energy must be >= 0");
    return std::sqrt(energy) + std::sqrt(energy + 1.0);
}

double energy_of_gamma(double gamma) {
    if (gamma < 1.0) throw invalid_parameter("energy_of_gamma: gamma must be >= 1");
    const double s = (gamma * gamma - 1.0) / (2.0 * gamma);
    return s * s;
}

namespace {

// 2Γ(m+½)/(m−1)! via log-Gamma
double linear_prefactor(int m) {
    if (m < 1) throw invalid_parameter("bk bounds: m must be >= 1");
    return 2.0 * std::exp(std::lgamma(m + 0.5) - std::lgamma(double(m)));
}

} // namespace

double bk_error_bound_linear_general(double energy, int m, double lambda, double lambda_prime) {
    if (lambda < 0.0 || lambda_prime < 0.0)
        throw invalid_parameter("bk_error_bound_linear: lambda must be >= 0");
    return linear_prefactor(m) * gamma_e(energy) *
           std::abs(std::sqrt(lambda) - std::sqrt(lambda_prime));
}

double bk_error_bound_linear_raw(double energy, int m, double lambda) {
    return bk_error_bound_linear_general(energy, m, lambda, 0.0);
}

double bk_error_bound_linear(double energy, int m, double lambda) {
    return std::min(2.0, bk_error_bound_linear_raw(energy, m, lambda));
}

double bk_error_bound_refined(double energy, int m, double lambda) {
    if (lambda < 0.0) throw invalid_parameter("bk_error_bound_refined: lambda must be >= 0");
    if (m < 1) throw invalid_parameter("bk_error_bound_refined: m must be >= 1");
    if (lambda == 0.0) return 0.0;
    const double g = gamma_e(energy);
    const double log_norm = m * std::log(2.0) + std::lgamma(double(m));
    auto f = [&](double x) {
        const double density = std::exp((m - 1.0) * std::log(x) - 0.5 * x - log_norm);
        return density * std::sin(std::min(g * std::sqrt(0.5 * lambda * x), M_PI / 2.0));
    };
    // exponential tail cut: Q(m, x/2) < 1e-14
    const double x_cut = 2.0 * boost::math::gamma_q_inv(double(m), 1e-14);
    const double x_kink = M_PI * M_PI / (2.0 * g * g * lambda);
    double value;
    if (x_kink < x_cut) {
        value = integrate_adaptive(f, 0.0, x_kink, 1e-12) +
                integrate_adaptive(f, x_kink, x_cut, 1e-12);
    } else {
        value = integrate_adaptive(f, 0.0, x_cut, 1e-12);
    }
    return std::min(2.0, 2.0 * value);
}

double displacement_diamond_bound(complexd alpha, complexd beta, double energy) {
    const double dist = std::abs(alpha - beta);
    return 2.0 * std::sin(std::min(gamma_e(energy) * dist, M_PI / 2.0));
}

double c_m(int m) {
    if (m < 1) throw invalid_parameter("c_m: m must be >= 1");
    const double log_c = -(m + 1.0) * std::log(4.0) - std::log(double(m)) +
                         (2.0 * m + 1.0) * (std::log(2.0 * m) - std::log(2.0 * m + 1.0)) +
                         2.0 * m * (std::lgamma(double(m)) - std::lgamma(m + 0.5));
    return std::exp(log_c);
}

double locc_bound(double beta_1, double energy, int m) {
    if (beta_1 < 0.0 || beta_1 > 1.0) throw invalid_parameter("locc_bound: beta_1 must be in [0,1]");
    const double g = gamma_e(energy);
    return c_m(m) * std::pow(beta_1, 2.0 * m + 1.0) / std::pow(g, 2.0 * m);
}

double plan_energy_for_hiding(double beta_target, int m, double beta_1) {
    const double ceiling = c_m(m) * std::pow(beta_1, 2.0 * m + 1.0);
    if (!(beta_target > 0.0 && beta_target <= ceiling)) {
        std::ostringstream os;
        os << "plan_energy_for_hiding: target must be in (0, " << ceiling << "]";
        throw invalid_parameter(os.str());
    }
    const double gamma = std::pow(ceiling / beta_target, 1.0 / (2.0 * m));
    return energy_of_gamma(gamma);
}

BudgetPlan plan_teleport_budget(const BudgetQuery& q) {
    if (!(q.target_epsilon > 0.0 && q.target_epsilon < 2.0))
        throw invalid_parameter("plan_teleport_budget: target accuracy must be in (0,2)");
    if (q.m < 1) throw invalid_parameter("plan_teleport_budget: m must be >= 1");
    const double g = gamma_e(q.energy);
    double lambda_star =
        std::pow(q.target_epsilon / (linear_prefactor(q.m) * g), 2.0);
    if (q.use_refined) {
        // the refined bound is tighter, so its admissible λ is at least the linear one
        double lo = lambda_star, hi = std::max(1.0, 4.0 * lambda_star);
        while (bk_error_bound_refined(q.energy, q.m, hi) < q.target_epsilon && hi < 1e9) hi *= 2.0;
        if (bk_error_bound_refined(q.energy, q.m, hi) < q.target_epsilon) {
            lambda_star = hi;  // bound saturates below the target; any λ works
        } else {
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (bk_error_bound_refined(q.energy, q.m, mid) <= q.target_epsilon)
                    lo = mid;
                else
                    hi = mid;
            }
            lambda_star = lo;
        }
    }
    BudgetPlan plan;
    plan.lambda_star = lambda_star;
    if (q.fixed == BudgetQuery::Fixed::eta) {
        if (q.eta <= 0.0 || q.eta > 1.0)
            throw invalid_parameter("plan_teleport_budget: eta must be in (0,1]");
        const double floor = 1.0 / (q.eta * q.eta) - 1.0;
        if (lambda_star <= floor) {
            const double limiting =
                q.use_refined ? bk_error_bound_refined(q.energy, q.m, floor)
                              : bk_error_bound_linear_raw(q.energy, q.m, floor);
            std::ostringstream os;
            os << "plan_teleport_budget: target unreachable at eta=" << q.eta
               << "; best achievable accuracy is " << limiting;
            throw infeasible_budget(os.str());
        }
        plan.eta = q.eta;
        plan.r = -0.5 * std::log(lambda_star - floor);
        if (plan.r < 0.0) plan.r = 0.0;  // already achievable with no squeezing
        plan.squeezing_db = r_to_db(plan.r);
    } else {
        if (q.r < 0.0) throw invalid_parameter("plan_teleport_budget: r must be >= 0");
        const double e2r = std::exp(-2.0 * q.r);
        if (lambda_star <= e2r) {
            const double limiting =
                q.use_refined ? bk_error_bound_refined(q.energy, q.m, e2r)
                              : bk_error_bound_linear_raw(q.energy, q.m, e2r);
            std::ostringstream os;
            os << "plan_teleport_budget: target unreachable at r=" << q.r
               << "; best achievable accuracy is " << limiting;
            throw infeasible_budget(os.str());
        }
        plan.r = q.r;
        plan.squeezing_db = r_to_db(q.r);
        plan.eta = 1.0 / std::sqrt(lambda_star - e2r + 1.0);
    }
    return plan;
}

std::vector<double> default_lambda_grid() {
    std::vector<double> grid(64);
    const double lo = std::log(1e-3), hi = std::log(1.0);
    for (int i = 0; i < 64; ++i) grid[i] = std::exp(lo + (hi - lo) * double(i) / 63.0);
    return grid;
}

LoccLowerBound locc_lower_bound_numeric(const TruncatedOperator& z,
                                        const std::vector<double>& lambda_grid) {
    if (!is_hermitian(z.entries, 1e-10))
        throw invalid_parameter("locc_lower_bound_numeric: Z must be Hermitian");
    const std::vector<double> grid = lambda_grid.empty() ? default_lambda_grid() : lambda_grid;
    LoccLowerBound best;
    for (double lam : grid) {
        const TruncatedOperator out = z.modes == 2 ? noise_channel_apply_mode_a(z, lam)
                                                   : noise_channel_apply(z, lam);
        const double v = lam / (2.0 - lam) * trace_norm_matrix(out.entries, true);
        if (v > best.value) {
            best.value = v;
            best.argmax_lambda = lam;
        }
    }
    return best;
}

double squeezed_noise_lower_bound_analytic(double r, double lambda) {
    if (r < 0.0 || lambda <= 0.0)
        throw invalid_parameter("squeezed_noise_lower_bound: need r >= 0, lambda > 0");
    return 2.0 - 2.0 / std::sqrt((1.0 + 0.5 * lambda * std::exp(2.0 * r)) *
                                 (1.0 + 0.5 * lambda * std::exp(-2.0 * r)));
}

SqueezedNoiseBound squeezed_noise_lower_bound(double r, double lambda) {
    SqueezedNoiseBound b;
    b.analytic = squeezed_noise_lower_bound_analytic(r, lambda);
    const int needed = int(std::ceil(20.0 * std::exp(2.0 * r)));
    if (needed > 4096) {
        std::ostringstream os;
        os << "squeezed_noise_lower_bound: cutoff " << needed << " for r=" << r
           << " is beyond the dense-operator budget";
        throw infeasible_budget(os.str());
    }
    b.cutoff = std::max(needed, truncation_dim_for(StateSpec::squeezed(r), 1e-12));
    const TruncatedOperator zeta = make_state(StateSpec::squeezed(r), b.cutoff);
    TruncatedOperator diff = noise_channel_apply(zeta, lambda);
    diff.entries -= zeta.entries;
    b.numeric = trace_norm_matrix(diff.entries, true);
    return b;
}

DimensionCount dimension_count(int m, long long energy) {
    if (m < 1 || energy < 0) throw invalid_parameter("dimension_count: need m >= 1, E >= 0");
    using boost::multiprecision::cpp_int;
    DimensionCount d;
    cpp_int c = 1;
    for (long long j = 1; j <= m; ++j) {
        c *= cpp_int(energy + j);
        c /= cpp_int(j);  // exact: product of j consecutive integers is divisible by j!
    }
    d.count = c;
    d.lower_bound = energy == 0
                        ? 0.0
                        : std::exp(m * std::log(double(energy)) - std::lgamma(m + 1.0));
    return d;
}

} // namespace cvhide
