#pragma once

#include <functional>

#include "cvhide/operators.hpp"
#include "cvhide/states.hpp"

namespace cvhide {

// Deterministic quadrature grid for d²α integrals. Polar grids carry radial
// nodes only (for radially symmetric integrands, the angular factor 2π|α| is
// folded into the weights); cartesian grids are tensor products. Both are
// composite Gauss–Legendre, so the total weight equals the covered area
// exactly.
struct PhaseGrid {
    enum class Kind { cartesian, polar };

    Kind kind = Kind::polar;
    double extent = 0.0;      // R: covers |α| ≤ R (polar) or the square [-R,R]² (cartesian)
    int nodes_per_axis = 0;
    std::vector<complexd> points;
    std::vector<double> weights;  // measure factors included

    static PhaseGrid radial(double extent, int nodes_per_axis = 400);
    static PhaseGrid cartesian(double extent, int nodes_per_axis = 600);

    PhaseGrid refined() const;  // doubled nodes per axis
    double total_weight() const;
    std::string describe() const;
};

// A phase-space evaluator plus its declared symmetry. Radial evaluators may
// be integrated on polar grids.
struct PhaseFunction {
    std::function<double(complexd)> eval;
    bool radial = false;
};

// χ_T(α) = Tr[T D(α)]. Warns when |α|² > dim/4. Single mode.
complexd characteristic_fn(const TruncatedOperator& t, complexd alpha);

// W_T(α) = (2/π) Tr[T D(2α) Π], Π = (−1)^{a†a}. Real part returned; for
// Hermitian input an imaginary residue ≥ 1e-6 raises numeric_error.
double wigner_fn(const TruncatedOperator& t, complexd alpha);

// Q_ρ(α) = (1/π) <α|ρ|α> ≥ 0.
double husimi_fn(const TruncatedOperator& rho, complexd alpha);

// Closed forms: thermal (ν), Fock (n), even/odd thermal (λ). The odd family
// at λ = 0 is the Fock-1 limit.
double wigner_thermal_cf(double nu, complexd alpha);
double wigner_fock_cf(int n, complexd alpha);
double wigner_even_thermal_cf(double lambda, complexd alpha);
double wigner_odd_thermal_cf(double lambda, complexd alpha);
double wigner_closed_form(const StateSpec& spec, complexd alpha);

// Evaluator factories. Diagonal operators get O(dim) radial evaluators
// (Laguerre/power-series sums); general operators fall back to the dense
// trace formulas.
PhaseFunction wigner_function_of(const TruncatedOperator& t);
PhaseFunction husimi_function_of(const TruncatedOperator& rho);

// ∫ |f| d²α over the grid. Warns grid-too-small when |f| on the rim of the
// covered region exceeds 1e-10.
double l1_phase_norm(const PhaseFunction& f, const PhaseGrid& grid);

// Same integral, refining the grid (doubling nodes) until two consecutive
// refinements move the value by less than tol.
double l1_phase_norm_converged(const PhaseFunction& f, PhaseGrid grid, double tol = 1e-7);

// Normalized Hermite function ψ_n(x) by the stable three-term recurrence;
// no factorials are formed.
double hermite_wavefunction(int n, double x);

// Homodyne density p(x) = Σ_{mn} ρ_{mn} ψ_m(x) ψ_n(x) of a single-mode state.
double quadrature_pdf(const TruncatedOperator& rho, double x);

// Evaluator form with the diagonal-vs-dense dispatch hoisted out of the
// per-point path; use inside quadrature loops.
std::function<double(double)> quadrature_pdf_function(const TruncatedOperator& rho);

// Mehler closed form for thermal states: e^{-x²/(2ν+1)}/√(π(2ν+1)).
double thermal_quadrature_pdf(double nu, double x);

// Default extent rule: √(2·E_max + 6) · 2 with E_max the larger mean photon
// number of the pair under comparison.
double default_phase_extent(double max_mean_photon);

} // namespace cvhide
