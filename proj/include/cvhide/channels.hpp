#pragma once

#include "cvhide/operators.hpp"

namespace cvhide {

struct ChannelSpec {
    enum class Kind { noise, loss, displace, bk };
    Kind kind = Kind::noise;
    double lambda = 0.0;  // noise, λ ≥ 0
    double eta = 1.0;     // loss/bk, η ∈ [0,1]
    double r = 0.0;       // bk squeezing, r ≥ 0
    complexd alpha{};     // displace
};

// λ(r,η) = e^{-2r} + (1-η²)/η², the Braunstein–Kimble noise parameter.
double lambda_of(double r, double eta);

// Squeezing dB conversion, e^{2r} = 10^{s/10}.
double db_to_r(double s_db);
double r_to_db(double r);

// Gaussian noise channel N_λ: χ_ρ(α) ↦ χ_ρ(α)·e^{-λ|α|²}. Fast Fock-basis
// path: the multiplier's generator preserves the photon-number offset m−n and
// acts on each offset as a symmetric tridiagonal matrix, so the channel is a
// per-offset tridiagonal exponential applied by scaled Taylor steps.
TruncatedOperator noise_channel_apply(const TruncatedOperator& op, double lambda);

// Oracle path: Gauss–Hermite quadrature of the displacement integral
// N_λ(ρ) = (1/π)∫ d²α e^{-|α|²} D(√λ α) ρ D(√λ α)†.
TruncatedOperator noise_channel_apply_integral(const TruncatedOperator& op, double lambda,
                                               int nodes_per_axis = 61);

// N_λ on mode A of a two-mode operator.
TruncatedOperator noise_channel_apply_mode_a(const TruncatedOperator& two_mode, double lambda);

// Pure loss channel E_η, Kraus operators <n-k|A_k|n> = √(C(n,k) η^{n-k} (1-η)^k).
// Diagonal inputs stay diagonal and take an O(d²) thinning path.
TruncatedOperator pure_loss_apply(const TruncatedOperator& op, double eta);

// D(α) ρ D(α)†, renormalized to unit trace with the delta recorded; warns
// when the truncation removes more than 1e-6 of the trace.
TruncatedOperator displacement_channel_apply(const TruncatedOperator& rho, complexd alpha);

// Exact single-mode output of the Braunstein–Kimble protocol: N_{λ(r,η)}(ρ).
TruncatedOperator bk_teleport_output(const TruncatedOperator& rho, double r, double eta);

} // namespace cvhide
