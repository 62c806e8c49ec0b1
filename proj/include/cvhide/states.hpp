#pragma once

#include <string>

#include "cvhide/operators.hpp"

namespace cvhide {

// The state families used throughout: number states, coherent and squeezed
// states, thermal states, the two-mode squeezed vacuum, and the even/odd
// thermal states supported on even/odd photon numbers.
struct StateSpec {
    enum class Family { fock, coherent, thermal, squeezed, tmsv, even_thermal, odd_thermal };

    Family family = Family::fock;
    int n = 0;            // fock
    complexd alpha{};     // coherent
    double nu = 0.0;      // thermal mean photon number, ν ≥ 0
    double r = 0.0;       // squeezing parameter, r ≥ 0 for tmsv
    double lambda = 0.0;  // even/odd thermal parameter, λ ∈ [0,1)

    static StateSpec fock(int n);
    static StateSpec coherent(complexd alpha);
    static StateSpec thermal(double nu);
    static StateSpec squeezed(double r);
    static StateSpec tmsv(double r);
    static StateSpec even_thermal(double lambda);
    static StateSpec odd_thermal(double lambda);

    int modes() const { return family == Family::tmsv ? 2 : 1; }
    std::string name() const;
};

struct EnergyBudget {
    double energy = 0.0;  // mean photon number, ≥ 0
    int modes = 1;
};

// Smallest cutoff whose analytic tail mass is below tail_tol, never below 8.
int truncation_dim_for(const StateSpec& spec, double tail_tol);

// Analytic Fock-tail mass of the family beyond the cutoff (upper bound for
// the non-geometric families).
double truncation_tail_mass(const StateSpec& spec, int dim);

// Density operator of the family at the given cutoff, renormalized to unit
// trace; the removed mass is recorded in renorm_delta.
TruncatedOperator make_state(const StateSpec& spec, int dim);

// Convenience overload choosing the cutoff from truncation_dim_for.
TruncatedOperator make_state_auto(const StateSpec& spec, double tail_tol = 1e-12);

// Unnormalized-then-normalized amplitude vector for the pure families
// (fock, coherent, squeezed, tmsv); throws for mixed families.
Vector state_vector(const StateSpec& spec, int dim);

} // namespace cvhide
