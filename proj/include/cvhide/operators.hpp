#pragma once

#include <Eigen/Dense>
#include <complex>

#include "cvhide/errors.hpp"

namespace cvhide {

using complexd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Dense operator on a truncated Fock space |0>..|dim-1> (per mode).
// Two-mode operators use the row-major Kronecker convention with mode A as
// the slow index: basis element |a,b> sits at index a*dim + b.
struct TruncatedOperator {
    int dim = 0;
    int modes = 1;
    Matrix entries;
    bool hermitian = false;
    // Trace removed when a state was renormalized after truncation.
    double renorm_delta = 0.0;

    int side() const { return modes == 2 ? dim * dim : dim; }
};

struct LadderSet {
    TruncatedOperator a;      // annihilation
    TruncatedOperator a_dag;  // creation
    TruncatedOperator n;      // photon number a†a (exact diagonal)
    TruncatedOperator x;      // (a + a†)/√2
    TruncatedOperator p;      // (a − a†)/(i√2)
};

// Single-mode ladder and quadrature matrices at the given cutoff.
LadderSet ladder_matrices(int dim);

// Truncated displacement operator D(α) = exp(αa† − α*a), computed entrywise
// from the associated-Laguerre recurrence (not a matrix exponential).
// Warns when |α|² exceeds dim.
TruncatedOperator displacement_matrix(complexd alpha, int dim);

// Fock amplitudes of the coherent state |α>: e^{-|α|²/2} α^n/√(n!).
Vector coherent_amplitudes(complexd alpha, int dim);

// Photon-number parity (−1)^n, single mode.
TruncatedOperator parity_matrix(int dim);

bool is_hermitian(const Matrix& m, double tol = 1e-12);

// Sum of absolute eigenvalues for Hermitian input; general input goes through
// the Hermitian dilation [[0, X], [X†, 0]].
double trace_norm_matrix(const Matrix& x, bool hermitian);
double trace_norm(const TruncatedOperator& x);

// Tr[ρN] with the exact diagonal number operator (total photon number for
// two-mode operators).
double mean_photon_number(const TruncatedOperator& rho);

// Tr[ρN] − |Tr[ρa]|², the minimum of the displaced energy over all α.
// Single mode only.
double irreducible_energy(const TruncatedOperator& rho);

// Standard entanglement robustness (Σ_k √λ_k)² of a normalized two-mode pure
// vector, from the singular values of its dim×dim coefficient matrix.
double schmidt_robustness(const Vector& psi, int dim);

// Kronecker product, mode A slow index.
TruncatedOperator tensor(const TruncatedOperator& a, const TruncatedOperator& b);

// Reduced operator on mode A of a two-mode operator.
TruncatedOperator partial_trace_b(const TruncatedOperator& two_mode);

// Validates the state invariants (trace within 1e-8 of one, min eigenvalue
// ≥ −1e-8, Hermitian); throws numeric_error on violation.
void check_state(const TruncatedOperator& rho);

// Largest |entry| of M - M†.
double hermiticity_defect(const Matrix& m);

// True when every off-diagonal entry is negligible; such operators are
// phase-invariant and admit radial phase-space evaluators.
bool is_diagonal(const Matrix& m, double tol = 1e-14);

} // namespace cvhide
