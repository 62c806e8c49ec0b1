#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cvhide/operators.hpp"
#include "cvhide/phase_space.hpp"

namespace cvhide {

// A binary discrimination scheme (ρ, σ; p).
struct SchemeSpec {
    TruncatedOperator rho;
    TruncatedOperator sigma;
    double prior = 0.5;

    SchemeSpec() = default;
    SchemeSpec(TruncatedOperator r, TruncatedOperator s, double p = 0.5);
};

// Closed forms for thermal pairs (τ_ν, τ_μ), μ > ν ≥ 0.
struct ThermalClosedForms {
    double half_trace = 0.0;
    double half_wigner_l1 = 0.0;
    double half_het = 0.0;
    double half_hom = 0.0;
    int n0 = 0;
};
ThermalClosedForms thermal_closed_forms(double nu, double mu);

struct BiasReport {
    double beta_1 = 0.0;
    double beta_hom = 0.0;
    double beta_het = 0.0;
    double wigner_l1_half = 0.0;
    // filled when the family has closed forms; deltas are numeric - closed
    std::optional<ThermalClosedForms> closed;
    std::map<std::string, double> deltas;
    int cutoff = 0;
    std::string grid;
};

// β₁ = ‖pρ − (1−p)σ‖₁, the Helstrom bias.
double beta_1(const SchemeSpec& scheme);

// Homodyne bias ∫|p·p_ρ(x) − (1−p)·p_σ(x)|dx, maximized over the supplied
// quadrature angles (default: the x quadrature only; every family treated in
// this artifact is phase-invariant or real-aligned).
double beta_hom(const SchemeSpec& scheme, const std::vector<double>& angles = {0.0});

// Uniform angle grid [0, π) for the general-input homodyne maximization.
std::vector<double> homodyne_angle_grid(int count = 24);

// Heterodyne bias ∫|p·Q_ρ − (1−p)·Q_σ| d²α. A supplied grid is used as-is;
// otherwise the grid is chosen from the scheme's energy and refined to
// convergence.
double beta_het(const SchemeSpec& scheme, const PhaseGrid* grid_override = nullptr);

// ‖p·W_ρ − (1−p)·W_σ‖_{L1}, an upper bound on the GOCC bias; equals the
// half-L1 Wigner distance at equal priors. Grid handling as in beta_het.
double wigner_l1_bound(const SchemeSpec& scheme, const PhaseGrid* grid_override = nullptr);

BiasReport bias_report(const SchemeSpec& scheme);

// Equal-prior thermal-pair report with the closed forms and agreement deltas
// attached.
BiasReport thermal_bias_report(double nu, double mu, double tail_tol = 1e-12);

// Verifies β_het ≤ β₁ ≤ e·β_het on the closed forms; returns the ratio chain.
struct SandwichReport {
    double half_het = 0.0;
    double half_trace = 0.0;
    double ratio = 0.0;  // β₁ / β_het
};
SandwichReport thermal_sandwich_check(double nu, double mu);

// Equiprobable coherent pair |±α>: β₁ = √(1−e^{−4α²}), β_GOCC = erf(√2 α).
struct CoherentPairBiases {
    double beta_1 = 0.0;
    double beta_gocc = 0.0;
};
CoherentPairBiases coherent_pair_biases(double alpha);

// ‖ψ_n² − ψ_{n+1}²‖_{L1} over |x| ≤ √(2n+6), resolving all sign changes.
double fock_pair_hom_distance(int n);

// 2((1−λ)/(1+λ))^{(1+λ²)/(2λ)}; the λ→0 limit is 2/e.
double even_odd_gocc_bound(double lambda);

// Efficiency-restricted bias of the even/odd pair: numeric ½‖E_η(ω⁺−ω⁻)‖₁
// against the two-term proof bound (1−λ)/(1+λ) + (1−λ)/(1+λ−2ηλ).
struct EfficiencyBias {
    double numeric = 0.0;
    double bound = 0.0;
    int cutoff = 0;
};
EfficiencyBias efficiency_bias(double lambda, double eta);

// ∫_ε^φ |cos(2(n+1)θ − (n+½)sin 2θ)| dθ against the (2/π)(φ−ε) limit.
struct OscillatoryCheck {
    double integral = 0.0;
    double limit = 0.0;
    double delta = 0.0;
};
OscillatoryCheck oscillatory_integral_check(double eps, double phi, int n);

} // namespace cvhide
