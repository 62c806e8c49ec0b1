#pragma once

#include <functional>
#include <vector>

namespace cvhide {

struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss–Legendre on [-1,1] (Newton on the Legendre recurrence).
QuadRule gauss_legendre(int n);
// Gauss–Legendre mapped to [a,b].
QuadRule gauss_legendre(int n, double a, double b);

// Gauss–Hermite for weight e^{-x^2} on the real line (Golub–Welsch).
QuadRule gauss_hermite(int n);

// Gauss–Laguerre for weight e^{-x} on [0,∞) (Golub–Welsch).
QuadRule gauss_laguerre(int n);

// Adaptive Gauss–Kronrod integration of f over [a,b] to the given absolute
// tolerance; throws numeric_error when the error estimate stays above it.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-10, int max_depth = 12);

// Composite fixed-order Gauss–Legendre over uniform panels; deterministic and
// robust for highly oscillatory integrands when panels track the frequency.
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int order = 12);

} // namespace cvhide
