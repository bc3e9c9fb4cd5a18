#pragma once

#include <vector>

#include "xlab/common.hpp"

namespace xlab {

struct RootResult {
  std::vector<cd> roots;   // degree entries, unordered
  bool converged = false;  // every root met its residual criterion
  int iterations = 0;
  double max_residual = 0.0;  // max |p(root)| over returned roots
};

// All roots of p(z) = sum_k coeff[k] z^k (coefficients low to high, leading
// coefficient nonzero) by simultaneous Aberth-Ehrlich iteration.  Initial
// guesses sit on the circle of radius (1+|a0|)^(1/n) with deterministic
// angular jitter, so results are reproducible run to run.
//
// A root counts as converged when |p(w)| <= max(1e-9 * max|coeff|,
// 8 eps * sum_k |coeff_k||w|^k) — the second term is the double-precision
// evaluation noise floor, which dominates the fixed bound for high degrees
// at |w| > 1 — or when its correction falls below machine resolution.
RootResult poly_roots(const std::vector<cd>& coeff, int max_iter = 300);

// p / (z - root) by synthetic division (remainder discarded).
std::vector<cd> deflate(const std::vector<cd>& coeff, cd root);

}  // namespace xlab
