#include "cvhide/phase_space.hpp"

#include <cmath>
#include <sstream>

#include "cvhide/quadrature.hpp"

namespace cvhide {

namespace {

constexpr int kPanelOrder = 16;

int panels_for(int nodes) { return std::max(1, (nodes + kPanelOrder - 1) / kPanelOrder); }

} // namespace

PhaseGrid PhaseGrid::radial(double extent, int nodes_per_axis) {
    if (extent <= 0) throw invalid_parameter("PhaseGrid: extent must be positive");
    PhaseGrid g;
    g.kind = Kind::polar;
    g.extent = extent;
    g.nodes_per_axis = nodes_per_axis;
    const int panels = panels_for(nodes_per_axis);
    const QuadRule base = gauss_legendre(kPanelOrder);
    const double h = extent / panels;
    g.points.reserve(size_t(panels) * kPanelOrder);
    g.weights.reserve(size_t(panels) * kPanelOrder);
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        for (int i = 0; i < kPanelOrder; ++i) {
            const double r = mid + 0.5 * h * base.x[i];
            g.points.emplace_back(r, 0.0);
            g.weights.push_back(0.5 * h * base.w[i] * 2.0 * M_PI * r);
        }
    }
    return g;
}

PhaseGrid PhaseGrid::cartesian(double extent, int nodes_per_axis) {
    if (extent <= 0) throw invalid_parameter("PhaseGrid: extent must be positive");
    PhaseGrid g;
    g.kind = Kind::cartesian;
    g.extent = extent;
    g.nodes_per_axis = nodes_per_axis;
    const int panels = panels_for(nodes_per_axis);
    const QuadRule base = gauss_legendre(kPanelOrder);
    std::vector<double> xs, ws;
    const double h = 2.0 * extent / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = -extent + (p + 0.5) * h;
        for (int i = 0; i < kPanelOrder; ++i) {
            xs.push_back(mid + 0.5 * h * base.x[i]);
            ws.push_back(0.5 * h * base.w[i]);
        }
    }
    const size_t n = xs.size();
    g.points.reserve(n * n);
    g.weights.reserve(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            g.points.emplace_back(xs[i], xs[j]);
            g.weights.push_back(ws[i] * ws[j]);
        }
    return g;
}

PhaseGrid PhaseGrid::refined() const {
    return kind == Kind::polar ? radial(extent, 2 * nodes_per_axis)
                               : cartesian(extent, 2 * nodes_per_axis);
}

double PhaseGrid::total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

std::string PhaseGrid::describe() const {
    std::ostringstream os;
    os << (kind == Kind::polar ? "polar" : "cartesian") << " R=" << extent
       << " n=" << nodes_per_axis;
    return os.str();
}

complexd characteristic_fn(const TruncatedOperator& t, complexd alpha) {
    if (t.modes != 1) throw invalid_parameter("characteristic_fn: single-mode operators only");
    if (std::norm(alpha) > t.dim / 4.0)
        warn(Warning::truncation_unreliable, "characteristic_fn: |alpha|^2 above dim/4");
    const TruncatedOperator d = displacement_matrix(alpha, t.dim);
    return (t.entries * d.entries).trace();
}

double wigner_fn(const TruncatedOperator& t, complexd alpha) {
    if (t.modes != 1) throw invalid_parameter("wigner_fn: single-mode operators only");
    const TruncatedOperator d = displacement_matrix(2.0 * alpha, t.dim);
    // Tr[T D(2α) Π] with Π folded in as a column sign
    complexd tr(0.0, 0.0);
    for (int m = 0; m < t.dim; ++m) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        complexd dot(0.0, 0.0);
        for (int n = 0; n < t.dim; ++n) dot += t.entries(m, n) * d.entries(n, m);
        tr += sign * dot;
    }
    const complexd w = (2.0 / M_PI) * tr;
    if (t.hermitian || is_hermitian(t.entries)) {
        if (std::abs(w.imag()) >= 1e-6)
            throw numeric_error("wigner_fn: imaginary residue above 1e-6 for Hermitian input");
    }
    return w.real();
}

double husimi_fn(const TruncatedOperator& rho, complexd alpha) {
    if (rho.modes != 1) throw invalid_parameter("husimi_fn: single-mode states only");
    const Vector c = coherent_amplitudes(alpha, rho.dim);
    const complexd q = c.adjoint() * (rho.entries * c);
    return q.real() / M_PI;
}

double wigner_thermal_cf(double nu, complexd alpha) {
    const double s = std::norm(alpha);
    return 2.0 / (M_PI * (2.0 * nu + 1.0)) * std::exp(-2.0 * s / (2.0 * nu + 1.0));
}

double wigner_fock_cf(int n, complexd alpha) {
    const double s4 = 4.0 * std::norm(alpha);
    // weighted recurrence on ℓ_k = e^{-s4/2} L_k(s4), no overflow
    double lm1 = 0.0, l = std::exp(-0.5 * s4);
    for (int k = 0; k < n; ++k) {
        const double lnext = ((2.0 * k + 1.0 - s4) * l - k * lm1) / (k + 1.0);
        lm1 = l;
        l = lnext;
    }
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return (2.0 / M_PI) * sign * l;
}

double wigner_even_thermal_cf(double lambda, complexd alpha) {
    const double s = std::norm(alpha);
    const double a = (1.0 - lambda) / (1.0 + lambda);
    const double b = (1.0 + lambda) / (1.0 - lambda);
    return ((1.0 - lambda) * std::exp(-2.0 * a * s) + (1.0 + lambda) * std::exp(-2.0 * b * s)) / M_PI;
}

double wigner_odd_thermal_cf(double lambda, complexd alpha) {
    if (lambda == 0.0) return wigner_fock_cf(1, alpha);
    const double s = std::norm(alpha);
    const double a = (1.0 - lambda) / (1.0 + lambda);
    const double b = (1.0 + lambda) / (1.0 - lambda);
    return ((1.0 - lambda) * std::exp(-2.0 * a * s) - (1.0 + lambda) * std::exp(-2.0 * b * s)) /
           (M_PI * lambda);
}

double wigner_closed_form(const StateSpec& spec, complexd alpha) {
    using F = StateSpec::Family;
    switch (spec.family) {
        case F::thermal: return wigner_thermal_cf(spec.nu, alpha);
        case F::fock: return wigner_fock_cf(spec.n, alpha);
        case F::even_thermal: return wigner_even_thermal_cf(spec.lambda, alpha);
        case F::odd_thermal: return wigner_odd_thermal_cf(spec.lambda, alpha);
        default:
            throw invalid_parameter("wigner_closed_form: no closed form for this family");
    }
}

PhaseFunction wigner_function_of(const TruncatedOperator& t) {
    if (t.modes != 1) throw invalid_parameter("wigner_function_of: single-mode operators only");
    PhaseFunction f;
    if (is_diagonal(t.entries)) {
        std::vector<double> diag(t.dim);
        for (int n = 0; n < t.dim; ++n) diag[n] = t.entries(n, n).real();
        f.radial = true;
        f.eval = [diag](complexd alpha) {
            const double s4 = 4.0 * std::norm(alpha);
            double lm1 = 0.0, l = std::exp(-0.5 * s4);
            double acc = diag[0] * l;
            for (size_t k = 1; k < diag.size(); ++k) {
                const double lnext = ((2.0 * (k - 1) + 1.0 - s4) * l - (k - 1.0) * lm1) / double(k);
                lm1 = l;
                l = lnext;
                acc += ((k % 2 == 0) ? diag[k] : -diag[k]) * l;
            }
            return (2.0 / M_PI) * acc;
        };
    } else {
        TruncatedOperator copy = t;
        f.radial = false;
        f.eval = [copy](complexd alpha) { return wigner_fn(copy, alpha); };
    }
    return f;
}

PhaseFunction husimi_function_of(const TruncatedOperator& rho) {
    if (rho.modes != 1) throw invalid_parameter("husimi_function_of: single-mode states only");
    PhaseFunction f;
    if (is_diagonal(rho.entries)) {
        std::vector<double> diag(rho.dim);
        for (int n = 0; n < rho.dim; ++n) diag[n] = rho.entries(n, n).real();
        f.radial = true;
        f.eval = [diag](complexd alpha) {
            const double s = std::norm(alpha);
            double term = std::exp(-s);  // e^{-s} s^n / n!
            double acc = diag[0] * term;
            for (size_t n = 1; n < diag.size(); ++n) {
                term *= s / double(n);
                acc += diag[n] * term;
            }
            return acc / M_PI;
        };
    } else {
        TruncatedOperator copy = rho;
        f.radial = false;
        f.eval = [copy](complexd alpha) { return husimi_fn(copy, alpha); };
    }
    return f;
}

double l1_phase_norm(const PhaseFunction& f, const PhaseGrid& grid) {
    if (grid.kind == PhaseGrid::Kind::polar && !f.radial)
        throw invalid_parameter("l1_phase_norm: polar grid requires a radial evaluator");
    // rim check for the declared tail bound
    double rim = std::abs(f.eval(complexd(grid.extent, 0.0)));
    if (grid.kind == PhaseGrid::Kind::cartesian) {
        rim = std::max(rim, std::abs(f.eval(complexd(0.0, grid.extent))));
        rim = std::max(rim, std::abs(f.eval(complexd(-grid.extent, 0.0))));
        rim = std::max(rim, std::abs(f.eval(complexd(grid.extent, grid.extent))));
    }
    if (rim > 1e-10)
        warn(Warning::grid_too_small, "l1_phase_norm: |f| at the grid rim exceeds 1e-10");
    double s = 0.0;
    for (size_t i = 0; i < grid.points.size(); ++i)
        s += grid.weights[i] * std::abs(f.eval(grid.points[i]));
    return s;
}

double l1_phase_norm_converged(const PhaseFunction& f, PhaseGrid grid, double tol) {
    double prev = l1_phase_norm(f, grid);
    int stable = 0;
    for (int iter = 0; iter < 12; ++iter) {
        grid = grid.refined();
        const double cur = l1_phase_norm(f, grid);
        stable = (std::abs(cur - prev) < tol) ? stable + 1 : 0;
        prev = cur;
        if (stable >= 2) return cur;
        if (grid.kind == PhaseGrid::Kind::cartesian && grid.nodes_per_axis > 4000) break;
    }
    if (stable >= 1) return prev;
    throw numeric_error("l1_phase_norm_converged: grid refinement did not converge");
}

double hermite_wavefunction(int n, double x) {
    if (n < 0) throw invalid_parameter("hermite_wavefunction: n must be >= 0");
    const double p0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    if (n == 0) return p0;
    double pm = p0, pc = std::sqrt(2.0) * x * p0;
    for (int k = 1; k < n; ++k) {
        const double pn = std::sqrt(2.0 / (k + 1.0)) * x * pc - std::sqrt(k / (k + 1.0)) * pm;
        pm = pc;
        pc = pn;
    }
    return pc;
}

namespace {

void hermite_column(int d, double x, Eigen::VectorXd& psi) {
    psi(0) = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    if (d > 1) psi(1) = std::sqrt(2.0) * x * psi(0);
    for (int k = 1; k + 1 < d; ++k)
        psi(k + 1) = std::sqrt(2.0 / (k + 1.0)) * x * psi(k) - std::sqrt(k / (k + 1.0)) * psi(k - 1);
}

} // namespace

std::function<double(double)> quadrature_pdf_function(const TruncatedOperator& rho) {
    if (rho.modes != 1) throw invalid_parameter("quadrature_pdf: single-mode states only");
    const int d = rho.dim;
    if (is_diagonal(rho.entries)) {
        std::vector<double> diag(d);
        for (int n = 0; n < d; ++n) diag[n] = rho.entries(n, n).real();
        return [d, diag](double x) {
            Eigen::VectorXd psi(d);
            hermite_column(d, x, psi);
            double p = 0.0;
            for (int n = 0; n < d; ++n) p += diag[n] * psi(n) * psi(n);
            return p;
        };
    }
    Matrix copy = rho.entries;
    return [d, copy](double x) {
        Eigen::VectorXd psi(d);
        hermite_column(d, x, psi);
        const complexd p = psi.cast<complexd>().transpose() * (copy * psi.cast<complexd>());
        return p.real();
    };
}

double quadrature_pdf(const TruncatedOperator& rho, double x) {
    return quadrature_pdf_function(rho)(x);
}

double thermal_quadrature_pdf(double nu, double x) {
    if (nu < 0) throw invalid_parameter("thermal_quadrature_pdf: nu must be >= 0");
    const double v = 2.0 * nu + 1.0;
    return std::exp(-x * x / v) / std::sqrt(M_PI * v);
}

double default_phase_extent(double max_mean_photon) {
    return 2.0 * std::sqrt(2.0 * max_mean_photon + 6.0);
}

} // namespace cvhide
