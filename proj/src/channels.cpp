#include "cvhide/channels.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "cvhide/quadrature.hpp"

namespace cvhide {

double lambda_of(double r, double eta) {
    if (eta <= 0.0 || eta > 1.0) throw invalid_parameter("lambda_of: eta must be in (0,1]");
    if (r < 0.0) throw invalid_parameter("lambda_of: r must be >= 0");
    return std::exp(-2.0 * r) + (1.0 - eta * eta) / (eta * eta);
}

double db_to_r(double s_db) {
    if (s_db < 0.0) throw invalid_parameter("db_to_r: squeezing dB must be >= 0");
    return s_db / 20.0 * std::log(10.0);
}

double r_to_db(double r) { return 20.0 * r / std::log(10.0); }

namespace {

// y <- exp(t·T) y for the symmetric tridiagonal T given by diag/sub, using
// scaled Taylor steps. T here is negative semidefinite, so the steps are
// contractions and the series is safe.
void expmv_tridiagonal(const std::vector<double>& diag, const std::vector<double>& sub,
                       double t, Vector& y) {
    const int k = int(diag.size());
    if (k == 0 || t == 0.0) return;
    double norm1 = std::abs(diag[0]) + (k > 1 ? std::abs(sub[0]) : 0.0);
    for (int i = 1; i < k; ++i) {
        double c = std::abs(diag[i]) + std::abs(sub[i - 1]);
        if (i + 1 < k) c += std::abs(sub[i]);
        norm1 = std::max(norm1, c);
    }
    const int steps = std::max(1, int(std::ceil(std::abs(t) * norm1 / 0.5)));
    const double h = t / steps;
    Vector term(k), next(k);
    for (int s = 0; s < steps; ++s) {
        term = y;
        for (int j = 1; j <= 60; ++j) {
            // next = (h/j)·T·term
            for (int i = 0; i < k; ++i) {
                complexd v = diag[i] * term(i);
                if (i > 0) v += sub[i - 1] * term(i - 1);
                if (i + 1 < k) v += sub[i] * term(i + 1);
                next(i) = (h / j) * v;
            }
            term.swap(next);
            y += term;
            if (term.cwiseAbs().maxCoeff() < 1e-18 * std::max(1.0, y.cwiseAbs().maxCoeff()))
                break;
        }
    }
}

// Per-offset generator of the χ ↦ χ·e^{-λ|α|²} semigroup:
// L(|n+a><n|) = √((n+1)(n+1+a))|n+1+a><n+1| + √(n(n+a))|n-1+a><n-1|
//               − (2n+a+1)|n+a><n|.
void offset_generator(int k, int a, std::vector<double>& diag, std::vector<double>& sub) {
    diag.resize(k);
    sub.resize(k > 0 ? k - 1 : 0);
    for (int n = 0; n < k; ++n) diag[n] = -(2.0 * n + a + 1.0);
    for (int n = 0; n + 1 < k; ++n) sub[n] = std::sqrt(double(n + 1) * double(n + 1 + a));
}

Matrix noise_apply_matrix(const Matrix& m, int d, double lambda) {
    Matrix out = Matrix::Zero(d, d);
    std::vector<double> diag, sub;
    Vector v(d);
    for (int a = 0; a < d; ++a) {
        const int k = d - a;
        offset_generator(k, a, diag, sub);
        v.resize(k);
        for (int n = 0; n < k; ++n) v(n) = m(n + a, n);
        expmv_tridiagonal(diag, sub, lambda, v);
        for (int n = 0; n < k; ++n) out(n + a, n) = v(n);
        if (a > 0) {
            for (int n = 0; n < k; ++n) v(n) = m(n, n + a);
            expmv_tridiagonal(diag, sub, lambda, v);
            for (int n = 0; n < k; ++n) out(n, n + a) = v(n);
        }
    }
    return out;
}

} // namespace

TruncatedOperator noise_channel_apply(const TruncatedOperator& op, double lambda) {
    if (lambda < 0.0) throw invalid_parameter("noise_channel_apply: lambda must be >= 0");
    if (op.modes != 1) throw invalid_parameter("noise_channel_apply: single-mode operators only");
    if (lambda == 0.0) return op;
    TruncatedOperator out = op;
    out.entries = noise_apply_matrix(op.entries, op.dim, lambda);
    return out;
}

TruncatedOperator noise_channel_apply_integral(const TruncatedOperator& op, double lambda,
                                               int nodes_per_axis) {
    if (lambda < 0.0) throw invalid_parameter("noise_channel_apply_integral: lambda must be >= 0");
    if (op.modes != 1)
        throw invalid_parameter("noise_channel_apply_integral: single-mode operators only");
    if (lambda == 0.0) return op;
    const QuadRule gh = gauss_hermite(nodes_per_axis);
    const int d = op.dim;
    Matrix acc = Matrix::Zero(d, d);
    const double sq = std::sqrt(lambda);
    for (int i = 0; i < nodes_per_axis; ++i) {
        for (int j = 0; j < nodes_per_axis; ++j) {
            const double w = gh.w[i] * gh.w[j];
            if (w < 1e-16) continue;  // total pruned mass below 4e-13
            const complexd alpha = sq * complexd(gh.x[i], gh.x[j]);
            const TruncatedOperator dmat = displacement_matrix(alpha, d);
            acc += w * (dmat.entries * op.entries * dmat.entries.adjoint());
        }
    }
    TruncatedOperator out = op;
    out.entries = acc / M_PI;
    return out;
}

TruncatedOperator noise_channel_apply_mode_a(const TruncatedOperator& two_mode, double lambda) {
    if (two_mode.modes != 2)
        throw invalid_parameter("noise_channel_apply_mode_a: expects a two-mode operator");
    if (lambda < 0.0) throw invalid_parameter("noise_channel_apply_mode_a: lambda must be >= 0");
    if (lambda == 0.0) return two_mode;
    const int d = two_mode.dim;
    TruncatedOperator out = two_mode;
    Matrix sub(d, d);
    for (int b1 = 0; b1 < d; ++b1) {
        for (int b2 = 0; b2 < d; ++b2) {
            for (int a1 = 0; a1 < d; ++a1)
                for (int a2 = 0; a2 < d; ++a2) sub(a1, a2) = two_mode.entries(a1 * d + b1, a2 * d + b2);
            sub = noise_apply_matrix(sub, d, lambda);
            for (int a1 = 0; a1 < d; ++a1)
                for (int a2 = 0; a2 < d; ++a2) out.entries(a1 * d + b1, a2 * d + b2) = sub(a1, a2);
        }
    }
    return out;
}

TruncatedOperator pure_loss_apply(const TruncatedOperator& op, double eta) {
    if (eta < 0.0 || eta > 1.0) throw invalid_parameter("pure_loss_apply: eta must be in [0,1]");
    if (op.modes != 1) throw invalid_parameter("pure_loss_apply: single-mode operators only");
    const int d = op.dim;
    if (eta == 1.0) return op;
    TruncatedOperator out = op;
    if (eta == 0.0) {
        const complexd tr = op.entries.trace();
        out.entries = Matrix::Zero(d, d);
        out.entries(0, 0) = tr;
        return out;
    }
    std::vector<double> lg(d + 1);
    for (int n = 0; n <= d; ++n) lg[n] = std::lgamma(double(n) + 1.0);
    const double le = std::log(eta), l1e = std::log1p(-eta);
    auto kraus_w = [&](int n, int k) {
        return std::exp(0.5 * (lg[n] - lg[k] - lg[n - k] + (n - k) * le + k * l1e));
    };
    if (is_diagonal(op.entries)) {
        // binomial thinning of the photon-number distribution
        Eigen::VectorXd outd = Eigen::VectorXd::Zero(d);
        for (int n = 0; n < d; ++n) {
            const double zn = op.entries(n, n).real();
            if (zn == 0.0) continue;
            for (int k = 0; k <= n; ++k) {
                const double w = kraus_w(n, k);
                outd(n - k) += zn * w * w;
            }
        }
        out.entries = Matrix::Zero(d, d);
        for (int n = 0; n < d; ++n) out.entries(n, n) = outd(n);
        return out;
    }
    Matrix acc = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        for (int m1 = 0; m1 + k < d; ++m1) {
            const double w1 = kraus_w(m1 + k, k);
            for (int m2 = 0; m2 + k < d; ++m2)
                acc(m1, m2) += w1 * kraus_w(m2 + k, k) * op.entries(m1 + k, m2 + k);
        }
    }
    out.entries = std::move(acc);
    return out;
}

TruncatedOperator displacement_channel_apply(const TruncatedOperator& rho, complexd alpha) {
    if (rho.modes != 1)
        throw invalid_parameter("displacement_channel_apply: single-mode states only");
    const TruncatedOperator d = displacement_matrix(alpha, rho.dim);
    TruncatedOperator out = rho;
    out.entries = d.entries * rho.entries * d.entries.adjoint();
    const double tr = out.entries.trace().real();
    const double delta = std::abs(1.0 - tr);
    if (delta > 1e-6) {
        std::ostringstream os;
        os << "displacement_channel_apply: trace delta " << delta << " after truncation";
        warn(Warning::truncation_unreliable, os.str());
    }
    if (tr > 0.0) out.entries /= tr;
    out.renorm_delta = delta;
    return out;
}

TruncatedOperator bk_teleport_output(const TruncatedOperator& rho, double r, double eta) {
    return noise_channel_apply(rho, lambda_of(r, eta));
}

} // namespace cvhide
