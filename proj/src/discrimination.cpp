#include "cvhide/discrimination.hpp"

#include <cmath>
#include <sstream>

#include "cvhide/channels.hpp"
#include "cvhide/quadrature.hpp"

namespace cvhide {

SchemeSpec::SchemeSpec(TruncatedOperator r, TruncatedOperator s, double p)
    : rho(std::move(r)), sigma(std::move(s)), prior(p) {
    if (rho.dim != sigma.dim || rho.modes != sigma.modes)
        throw invalid_parameter("SchemeSpec: rho and sigma dimensions differ");
    if (!(prior >= 0.0 && prior <= 1.0))
        throw invalid_parameter("SchemeSpec: prior must be in [0,1]");
}

namespace {

Matrix weighted_difference(const SchemeSpec& s) {
    return s.prior * s.rho.entries - (1.0 - s.prior) * s.sigma.entries;
}

Matrix rotate_fock(const Matrix& m, double theta) {
    const int d = int(m.rows());
    Matrix out(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            out(i, j) = m(i, j) * std::exp(complexd(0.0, theta * double(i - j)));
    return out;
}

double scheme_max_energy(const SchemeSpec& s) {
    return std::max(mean_photon_number(s.rho), mean_photon_number(s.sigma));
}

// Extent large enough that the named Gaussian-envelope tail is below 1e-10,
// never below the default rule.
double extent_for(double max_energy, double rate) {
    const double need = std::sqrt(23.5 / rate) + 1.0;
    return std::max(default_phase_extent(max_energy), need);
}

} // namespace

double beta_1(const SchemeSpec& scheme) {
    return trace_norm_matrix(weighted_difference(scheme), true);
}

std::vector<double> homodyne_angle_grid(int count) {
    std::vector<double> a(count);
    for (int i = 0; i < count; ++i) a[i] = M_PI * double(i) / double(count);
    return a;
}

double beta_hom(const SchemeSpec& scheme, const std::vector<double>& angles) {
    if (scheme.rho.modes != 1) throw invalid_parameter("beta_hom: single-mode schemes only");
    if (angles.empty()) throw invalid_parameter("beta_hom: empty angle grid");
    const int d = scheme.rho.dim;
    const double limit = std::sqrt(2.0 * d) + 4.0;
    const bool diag =
        is_diagonal(scheme.rho.entries) && is_diagonal(scheme.sigma.entries);
    double best = 0.0;
    for (double theta : angles) {
        TruncatedOperator r = scheme.rho, s = scheme.sigma;
        if (theta != 0.0 && !diag) {
            r.entries = rotate_fock(r.entries, theta);
            s.entries = rotate_fock(s.entries, theta);
        }
        const auto pdf_r = quadrature_pdf_function(r);
        const auto pdf_s = quadrature_pdf_function(s);
        const double p = scheme.prior;
        auto f = [&](double x) { return std::abs(p * pdf_r(x) - (1.0 - p) * pdf_s(x)); };
        best = std::max(best, integrate_adaptive(f, -limit, limit, 1e-9));
        if (diag) break;  // rotations act trivially on diagonal states
    }
    return best;
}

double beta_het(const SchemeSpec& scheme, const PhaseGrid* grid_override) {
    if (scheme.rho.modes != 1) throw invalid_parameter("beta_het: single-mode schemes only");
    const PhaseFunction qr = husimi_function_of(scheme.rho);
    const PhaseFunction qs = husimi_function_of(scheme.sigma);
    const double p = scheme.prior;
    PhaseFunction f;
    f.radial = qr.radial && qs.radial;
    f.eval = [qr, qs, p](complexd a) { return p * qr.eval(a) - (1.0 - p) * qs.eval(a); };
    if (grid_override) return l1_phase_norm(f, *grid_override);
    const double energy = scheme_max_energy(scheme);
    const double extent = extent_for(energy, 1.0 / (energy + 1.0));
    PhaseGrid grid = f.radial ? PhaseGrid::radial(extent) : PhaseGrid::cartesian(extent);
    return l1_phase_norm_converged(f, grid);
}

double wigner_l1_bound(const SchemeSpec& scheme, const PhaseGrid* grid_override) {
    if (scheme.rho.modes != 1) throw invalid_parameter("wigner_l1_bound: single-mode schemes only");
    const PhaseFunction wr = wigner_function_of(scheme.rho);
    const PhaseFunction ws = wigner_function_of(scheme.sigma);
    const double p = scheme.prior;
    PhaseFunction f;
    f.radial = wr.radial && ws.radial;
    f.eval = [wr, ws, p](complexd a) { return p * wr.eval(a) - (1.0 - p) * ws.eval(a); };
    if (grid_override) return l1_phase_norm(f, *grid_override);
    const double energy = scheme_max_energy(scheme);
    const double extent = extent_for(energy, 2.0 / (2.0 * energy + 1.0));
    PhaseGrid grid = f.radial ? PhaseGrid::radial(extent) : PhaseGrid::cartesian(extent);
    return l1_phase_norm_converged(f, grid);
}

BiasReport bias_report(const SchemeSpec& scheme) {
    BiasReport r;
    r.beta_1 = beta_1(scheme);
    r.beta_hom = beta_hom(scheme);
    r.beta_het = beta_het(scheme);
    r.wigner_l1_half = wigner_l1_bound(scheme);
    r.cutoff = scheme.rho.dim;
    const double energy = scheme_max_energy(scheme);
    std::ostringstream os;
    os << "radial/cartesian auto, R>=" << default_phase_extent(energy);
    r.grid = os.str();
    return r;
}

BiasReport thermal_bias_report(double nu, double mu, double tail_tol) {
    const int dim = std::max(truncation_dim_for(StateSpec::thermal(nu), tail_tol),
                             truncation_dim_for(StateSpec::thermal(mu), tail_tol));
    BiasReport r = bias_report(SchemeSpec(make_state(StateSpec::thermal(nu), dim),
                                          make_state(StateSpec::thermal(mu), dim)));
    const ThermalClosedForms cf = thermal_closed_forms(nu, mu);
    r.closed = cf;
    r.deltas["trace"] = r.beta_1 - cf.half_trace;
    r.deltas["wigner_l1"] = r.wigner_l1_half - cf.half_wigner_l1;
    r.deltas["het"] = r.beta_het - cf.half_het;
    r.deltas["hom"] = r.beta_hom - cf.half_hom;
    return r;
}

ThermalClosedForms thermal_closed_forms(double nu, double mu) {
    if (!(mu > nu && nu >= 0.0)) throw invalid_parameter("thermal_closed_forms: need mu > nu >= 0");
    ThermalClosedForms cf;
    cf.n0 = nu == 0.0
                ? 0
                : int(std::floor((std::log(mu + 1.0) - std::log(nu + 1.0)) /
                                 (std::log(mu * (nu + 1.0)) - std::log(nu * (mu + 1.0)))));
    cf.half_trace = std::pow(mu / (mu + 1.0), cf.n0 + 1.0) - std::pow(nu / (nu + 1.0), cf.n0 + 1.0);
    cf.half_wigner_l1 = 2.0 * (mu - nu) / (2.0 * mu + 1.0) *
                        std::pow((2.0 * mu + 1.0) / (2.0 * nu + 1.0),
                                 -(2.0 * nu + 1.0) / (2.0 * (mu - nu)));
    cf.half_het = (mu - nu) / (mu + 1.0) *
                  std::pow((mu + 1.0) / (nu + 1.0), -(nu + 1.0) / (mu - nu));
    const double lg = std::log((2.0 * mu + 1.0) / (2.0 * nu + 1.0));
    cf.half_hom = std::erf(std::sqrt((2.0 * mu + 1.0) / (4.0 * (mu - nu)) * lg)) -
                  std::erf(std::sqrt((2.0 * nu + 1.0) / (4.0 * (mu - nu)) * lg));
    return cf;
}

SandwichReport thermal_sandwich_check(double nu, double mu) {
    const ThermalClosedForms cf = thermal_closed_forms(nu, mu);
    SandwichReport rep;
    rep.half_het = cf.half_het;
    rep.half_trace = cf.half_trace;
    rep.ratio = cf.half_trace / cf.half_het;
    const double e = std::exp(1.0);
    if (cf.half_het > cf.half_trace + 1e-9 || cf.half_trace > e * cf.half_het + 1e-9) {
        std::ostringstream os;
        os << "thermal_sandwich_check: chain violated at nu=" << nu << " mu=" << mu
           << " (ratio " << rep.ratio << ")";
        throw assertion_failure(os.str());
    }
    return rep;
}

CoherentPairBiases coherent_pair_biases(double alpha) {
    if (alpha < 0.0) throw invalid_parameter("coherent_pair_biases: alpha must be >= 0");
    CoherentPairBiases b;
    b.beta_1 = std::sqrt(-std::expm1(-4.0 * alpha * alpha));
    b.beta_gocc = std::erf(std::sqrt(2.0) * alpha);
    return b;
}

double fock_pair_hom_distance(int n) {
    if (n < 0) throw invalid_parameter("fock_pair_hom_distance: n must be >= 0");
    // pad past the classical turning point; the evanescent tail beyond
    // √(2n+6) still carries ~1e-2 of L1 mass at small n
    const double limit = std::sqrt(2.0 * n + 6.0) + 4.0;
    auto g = [n](double x) {
        const double a = hermite_wavefunction(n, x);
        const double b = hermite_wavefunction(n + 1, x);
        return a * a - b * b;
    };
    // locate every sign change on [0, limit] (the integrand is even), then
    // integrate each smooth piece separately so |g| has no interior kinks
    std::vector<double> cuts{0.0};
    const int scan = 16 * (n + 2) + 64;
    double x0 = 0.0, g0 = g(0.0);
    for (int i = 1; i <= scan; ++i) {
        const double x1 = limit * double(i) / scan;
        const double g1 = g(x1);
        if ((g0 < 0.0) != (g1 < 0.0)) {
            double lo = x0, hi = x1, glo = g0;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double gm = g(mid);
                if ((glo < 0.0) != (gm < 0.0)) {
                    hi = mid;
                } else {
                    lo = mid;
                    glo = gm;
                }
            }
            cuts.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        g0 = g1;
    }
    cuts.push_back(limit);
    double total = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        total += std::abs(integrate_adaptive(g, cuts[i], cuts[i + 1], 1e-13));
    return 2.0 * total;
}

double even_odd_gocc_bound(double lambda) {
    if (lambda < 0.0 || lambda >= 1.0)
        throw invalid_parameter("even_odd_gocc_bound: lambda must be in [0,1)");
    if (lambda == 0.0) return 2.0 / std::exp(1.0);
    return 2.0 * std::pow((1.0 - lambda) / (1.0 + lambda),
                          (1.0 + lambda * lambda) / (2.0 * lambda));
}

EfficiencyBias efficiency_bias(double lambda, double eta) {
    if (lambda < 0.0 || lambda >= 1.0)
        throw invalid_parameter("efficiency_bias: lambda must be in [0,1)");
    if (eta < 0.0 || eta > 1.0) throw invalid_parameter("efficiency_bias: eta must be in [0,1]");
    const int dim = truncation_dim_for(StateSpec::even_thermal(lambda), 1e-12) + 1;
    const TruncatedOperator plus = make_state(StateSpec::even_thermal(lambda), dim);
    const TruncatedOperator minus = make_state(StateSpec::odd_thermal(lambda), dim);
    TruncatedOperator z = plus;
    z.entries = 0.5 * (plus.entries - minus.entries);
    const TruncatedOperator out = pure_loss_apply(z, eta);
    EfficiencyBias r;
    r.numeric = trace_norm(out);
    r.bound = (1.0 - lambda) / (1.0 + lambda) +
              (1.0 - lambda) / (1.0 + lambda - 2.0 * eta * lambda);
    r.cutoff = dim;
    if (r.numeric > r.bound + 1e-6) {
        std::ostringstream os;
        os << "efficiency_bias: numeric " << r.numeric << " exceeds bound " << r.bound;
        throw assertion_failure(os.str());
    }
    return r;
}

OscillatoryCheck oscillatory_integral_check(double eps, double phi, int n) {
    if (n < 1) throw invalid_parameter("oscillatory_integral_check: n must be >= 1");
    if (phi < eps) throw invalid_parameter("oscillatory_integral_check: need phi >= eps");
    OscillatoryCheck c;
    c.limit = (2.0 / M_PI) * (phi - eps);
    if (phi == eps) return c;
    auto f = [n](double t) {
        return std::abs(std::cos(2.0 * (n + 1.0) * t - (n + 0.5) * std::sin(2.0 * t)));
    };
    // phase velocity stays below 4n+3; keep several panels per oscillation
    int panels = std::max(128, int(std::ceil(6.0 * (n + 1.0) * (phi - eps))));
    double prev = integrate_panels(f, eps, phi, panels);
    for (int iter = 0;; ++iter) {
        panels *= 2;
        const double cur = integrate_panels(f, eps, phi, panels);
        if (std::abs(cur - prev) < 1e-7) {
            c.integral = cur;
            break;
        }
        prev = cur;
        if (iter >= 4) throw numeric_error("oscillatory_integral_check: quadrature non-convergence");
    }
    c.delta = c.integral - c.limit;
    return c;
}

} // namespace cvhide
