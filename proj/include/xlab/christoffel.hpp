#pragma once

#include <vector>

#include "xlab/common.hpp"
#include "xlab/extremal.hpp"
#include "xlab/measure.hpp"

namespace xlab {

// Trace of the Christoffel function lambda_n(z) = inf{ ||Q||_q^q : Q(z) = 1,
// deg Q <= n } over a degree range, plus its plateau estimate.
struct ChristoffelResult {
  cd z;
  double q = 2.0;
  std::vector<int> degrees;
  std::vector<double> lambda;        // one value per degree, non-increasing
  std::vector<double> kernel_partial;  // sum_{j<=n} |p_j(z)|^2 (q=2 path only)
  double limit_estimate = 0.0;       // mean over the last quarter of degrees
  bool converged = true;             // false if any IRLS solve gave up
  const char* method = "kernel";     // "kernel" | "constrained-opt"
};

// q = 2 closed form via the reproducing kernel: lambda_n = 1 / K_n(z, z)
// with K_n(z, z) = sum_{j<=n} |p_j(z)|^2.
ChristoffelResult lambda_kernel(const Discretization& disc, cd z, int n_max);

// General q by constraint elimination: Q = 1 + (x - z) R with R free of
// degree n-1, solved by the shared IRLS core in the q = 2 orthonormal basis.
double lambda_opt(const Discretization& disc, cd z, int n, double q);
// Same, reusing a factorization across degrees (the trace path).
double lambda_opt(const MeasureFactorization& fac, cd z, int n, double q,
                  bool* converged = nullptr);
ChristoffelResult lambda_trace(const Discretization& disc, cd z,
                               const std::vector<int>& degrees, double q);

// Both sides of the disk-automorphism identity
// lambda_inf(x0; mu, q) == lambda_inf(0; pushed mu, q): the trace at x0 and
// the trace at 0 of the pushed measure, for plateau comparison.
struct MobiusCheck {
  ChristoffelResult at_x0;
  ChristoffelResult at_zero_pushed;
};
MobiusCheck mobius_invariance_check(const Discretization& disc, cd x0,
                                    double q, const std::vector<int>& degrees);

}  // namespace xlab
