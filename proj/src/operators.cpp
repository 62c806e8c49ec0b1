#include "cvhide/operators.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <iostream>
#include <mutex>
#include <sstream>

namespace cvhide {

namespace {

std::mutex g_warn_mutex;
WarningHandler g_warn_handler = [](Warning, const std::string& msg) {
    std::cerr << "cvhide: warning: " << msg << '\n';
};

} // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
    std::lock_guard<std::mutex> lock(g_warn_mutex);
    std::swap(g_warn_handler, handler);
    return handler;
}

void warn(Warning kind, const std::string& message) {
    WarningHandler h;
    {
        std::lock_guard<std::mutex> lock(g_warn_mutex);
        h = g_warn_handler;
    }
    if (h) h(kind, message);
}

LadderSet ladder_matrices(int dim) {
    if (dim < 2) throw invalid_parameter("ladder_matrices: dim must be >= 2");
    LadderSet s;
    Matrix a = Matrix::Zero(dim, dim);
    for (int k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(double(k));
    Matrix adag = a.adjoint();
    Matrix n = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = double(k);
    const complexd i_unit(0.0, 1.0);
    Matrix x = (a + adag) / std::sqrt(2.0);
    Matrix p = (a - adag) / (i_unit * std::sqrt(2.0));
    s.a = {dim, 1, std::move(a), false, 0.0};
    s.a_dag = {dim, 1, std::move(adag), false, 0.0};
    s.n = {dim, 1, std::move(n), true, 0.0};
    s.x = {dim, 1, std::move(x), true, 0.0};
    s.p = {dim, 1, std::move(p), true, 0.0};
    return s;
}

TruncatedOperator displacement_matrix(complexd alpha, int dim) {
    if (dim < 2) throw invalid_parameter("displacement_matrix: dim must be >= 2");
    const double x = std::norm(alpha);
    if (x > double(dim)) {
        std::ostringstream os;
        os << "displacement_matrix: |alpha|^2 = " << x << " exceeds dim = " << dim;
        warn(Warning::truncation_unreliable, os.str());
    }
    Matrix d = Matrix::Zero(dim, dim);
    if (x == 0.0) {
        d.setIdentity();
        return {dim, 1, std::move(d), false, 0.0};
    }
    const double ehalf = std::exp(-0.5 * x);
    // One associated-Laguerre recurrence per diagonal offset a = m - n:
    //   <n+a|D(α)|n> = c_n L_n^{(a)}(x),  c_n = √(n!/(n+a)!) α^a e^{-x/2},
    // and the mirrored entry carries (-α*)^a instead of α^a.
    for (int a = 0; a < dim; ++a) {
        complexd pref_lo(ehalf, 0.0), pref_hi(ehalf, 0.0);
        for (int j = 1; j <= a; ++j) {
            pref_lo *= alpha / std::sqrt(double(j));
            pref_hi *= -std::conj(alpha) / std::sqrt(double(j));
        }
        double lm1 = 0.0, l = 1.0; // L_{n-1}^{(a)}, L_n^{(a)}
        for (int n = 0; n + a < dim; ++n) {
            if (n > 0) {
                const double lnext =
                    ((2.0 * n - 1.0 + a - x) * l - (n - 1.0 + a) * lm1) / double(n);
                lm1 = l;
                l = lnext;
                const double scale = std::sqrt(double(n) / double(n + a));
                pref_lo *= scale;
                pref_hi *= scale;
            }
            d(n + a, n) = pref_lo * l;
            if (a > 0) d(n, n + a) = pref_hi * l;
        }
    }
    return {dim, 1, std::move(d), false, 0.0};
}

Vector coherent_amplitudes(complexd alpha, int dim) {
    Vector c(dim);
    c(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(double(n));
    return c;
}

TruncatedOperator parity_matrix(int dim) {
    Matrix p = Matrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) p(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    return {dim, 1, std::move(p), true, 0.0};
}

bool is_hermitian(const Matrix& m, double tol) {
    return hermiticity_defect(m) <= tol;
}

double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_diagonal(const Matrix& m, double tol) {
    double off = 0.0;
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i)
            if (i != j) off = std::max(off, std::abs(m(i, j)));
    return off <= tol;
}

double trace_norm_matrix(const Matrix& x, bool hermitian) {
    if (!x.allFinite()) throw numeric_error("trace_norm: non-finite entries");
    if (is_diagonal(x) && hermiticity_defect(x) <= 1e-12)
        return x.diagonal().real().cwiseAbs().sum();
    if (hermitian || is_hermitian(x)) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(x, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw numeric_error("trace_norm: eigensolver failed");
        return es.eigenvalues().cwiseAbs().sum();
    }
    // Hermitian dilation [[0, X], [X†, 0]] has spectrum ±σ_i(X).
    const int n = int(x.rows());
    Matrix dil = Matrix::Zero(2 * n, 2 * n);
    dil.block(0, n, n, n) = x;
    dil.block(n, 0, n, n) = x.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> es(dil, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw numeric_error("trace_norm: eigensolver failed");
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_norm(const TruncatedOperator& x) {
    return trace_norm_matrix(x.entries, x.hermitian);
}

double mean_photon_number(const TruncatedOperator& rho) {
    double e = 0.0;
    if (rho.modes == 1) {
        for (int n = 0; n < rho.dim; ++n) e += double(n) * rho.entries(n, n).real();
    } else {
        for (int a = 0; a < rho.dim; ++a)
            for (int b = 0; b < rho.dim; ++b)
                e += double(a + b) * rho.entries(a * rho.dim + b, a * rho.dim + b).real();
    }
    return e;
}

double irreducible_energy(const TruncatedOperator& rho) {
    if (rho.modes != 1) throw invalid_parameter("irreducible_energy: single-mode states only");
    // Tr[ρ a] = Σ_n √(n+1) ρ(n+1, n)
    complexd za(0.0, 0.0);
    for (int n = 0; n + 1 < rho.dim; ++n)
        za += std::sqrt(double(n + 1)) * rho.entries(n + 1, n);
    return mean_photon_number(rho) - std::norm(za);
}

double schmidt_robustness(const Vector& psi, int dim) {
    if (psi.size() != Eigen::Index(dim) * dim)
        throw invalid_parameter("schmidt_robustness: vector is not a two-mode dim^2 vector");
    const double nrm = psi.norm();
    if (std::abs(nrm - 1.0) > 1e-6)
        throw invalid_parameter("schmidt_robustness: vector norm deviates from 1");
    Eigen::Map<const Matrix> coeff(psi.data(), dim, dim);
    // Row-major |a,b| layout: Eigen maps column-major, giving the transpose;
    // singular values are unaffected.
    Eigen::JacobiSVD<Matrix> svd(coeff);
    return std::pow(svd.singularValues().sum(), 2);
}

TruncatedOperator tensor(const TruncatedOperator& a, const TruncatedOperator& b) {
    if (a.modes != 1 || b.modes != 1 || a.dim != b.dim)
        throw invalid_parameter("tensor: expects two single-mode operators of equal dim");
    const int d = a.dim;
    Matrix out(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            out.block(i * d, j * d, d, d) = a.entries(i, j) * b.entries;
    return {d, 2, std::move(out), a.hermitian && b.hermitian, 0.0};
}

TruncatedOperator partial_trace_b(const TruncatedOperator& two_mode) {
    if (two_mode.modes != 2) throw invalid_parameter("partial_trace_b: expects a two-mode operator");
    const int d = two_mode.dim;
    Matrix out = Matrix::Zero(d, d);
    for (int a1 = 0; a1 < d; ++a1)
        for (int a2 = 0; a2 < d; ++a2)
            for (int b = 0; b < d; ++b)
                out(a1, a2) += two_mode.entries(a1 * d + b, a2 * d + b);
    return {d, 1, std::move(out), two_mode.hermitian, 0.0};
}

void check_state(const TruncatedOperator& rho) {
    const double tr = rho.entries.trace().real();
    if (std::abs(tr - 1.0) > 1e-8) throw numeric_error("state trace deviates from 1");
    if (hermiticity_defect(rho.entries) > 1e-10) throw numeric_error("state is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.entries, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8) throw numeric_error("state has a negative eigenvalue");
}

} // namespace cvhide
