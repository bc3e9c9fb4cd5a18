#pragma once

#include <functional>
#include <vector>

#include "xlab/common.hpp"

namespace xlab {

struct Quad1D {
  std::vector<double> x;
  std::vector<double> w;
};

// n-point Gauss-Legendre rule on [a,b] (nodes via the symmetric Jacobi
// matrix; exact for polynomials of degree <= 2n-1).
Quad1D gauss_legendre(int n, double a, double b);

// Quadrature rule for f |-> integral_0^{2pi} f(theta) dtheta/(2pi).
//
// With no split angles this is the n-point periodic trapezoid rule
// (spectrally accurate for analytic periodic integrands).  With splits the
// circle is cut at the given angles and each arc gets composite
// Gauss-Legendre panels (a trapezoid rule on a non-periodic arc would fall
// back to O(n^-2)); the total node count stays close to max(n, per-arc
// minimum).  Weights sum to 1.
Quad1D circle_rule(int n, const std::vector<double>& split_angles = {});

// integral_a^b f dx by composite Gauss-Legendre with panel doubling until the
// relative change is below rel_tol (or max_levels is hit).
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-12,
                          int max_levels = 14);

}  // namespace xlab
