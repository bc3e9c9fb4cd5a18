#include "xlab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace xlab {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// p(w) and the noise floor sum_k |a_k| |w|^k in one pass
cd eval_with_floor(const std::vector<cd>& a, cd w, double* floor_out) {
  cd v = a.back();
  double f = std::abs(a.back());
  const double r = std::abs(w);
  for (std::size_t k = a.size() - 1; k-- > 0;) {
    v = v * w + a[k];
    f = f * r + std::abs(a[k]);
  }
  *floor_out = f;
  return v;
}

}  // namespace

std::vector<cd> deflate(const std::vector<cd>& coeff, cd root) {
  const std::size_t n = coeff.size() - 1;
  std::vector<cd> q(n);
  cd carry = coeff[n];
  for (std::size_t k = n; k-- > 0;) {
    q[k] = carry;
    carry = coeff[k] + carry * root;
  }
  return q;
}

RootResult poly_roots(const std::vector<cd>& coeff, int max_iter) {
  if (coeff.size() < 2) throw DomainError("poly_roots: degree must be >= 1");
  if (std::abs(coeff.back()) == 0.0)
    throw DomainError("poly_roots: leading coefficient is zero");

  const std::size_t n = coeff.size() - 1;
  std::vector<cd> a(coeff);
  for (auto& c : a) c /= coeff.back();  // monic copy

  RootResult res;
  if (n == 1) {
    res.roots = {-a[0]};
    double fl;
    res.max_residual = std::abs(eval_with_floor(a, res.roots[0], &fl));
    res.converged = true;
    res.iterations = 0;
    return res;
  }

  double maxc = 0.0;
  for (const auto& c : a) maxc = std::max(maxc, std::abs(c));

  std::vector<cd> w(n);
  const double r0 = std::pow(1.0 + std::abs(a[0]), 1.0 / n);
  for (std::size_t k = 0; k < n; ++k) {
    const double ang =
        TWO_PI * (k + 0.25) / n + 0.01 * std::sin(3.7 * (double)k);
    w[k] = r0 * cd(std::cos(ang), std::sin(ang));
  }

  std::vector<cd> dcoef(n);  // p'
  for (std::size_t k = 1; k <= n; ++k) dcoef[k - 1] = a[k] * (double)k;

  std::vector<char> done(n, 0);
  int it = 0;
  for (; it < max_iter; ++it) {
    bool all_done = true, moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      double floor_i;
      const cd pv = eval_with_floor(a, w[i], &floor_i);
      const double tol = std::max(1e-9 * maxc, 8.0 * kEps * floor_i);
      if (std::abs(pv) <= tol) {
        done[i] = 1;
        continue;
      }
      all_done = false;

      cd dv = dcoef.back();
      for (std::size_t k = dcoef.size() - 1; k-- > 0;)
        dv = dv * w[i] + dcoef[k];
      cd f = (std::abs(dv) > 0) ? pv / dv : cd(maxc, 0);

      cd s(0.0, 0.0);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) {
          const cd d = w[i] - w[j];
          if (std::norm(d) > 1e-60) s += 1.0 / d;
        }
      const cd denom = 1.0 - f * s;
      cd corr = (std::abs(denom) > 1e-12) ? f / denom : f;
      if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag()))
        corr = cd(0.3 / (i + 1.0), 0.2);  // deterministic nudge out of a collision
      w[i] -= corr;
      if (std::abs(corr) > 4.0 * kEps * (1.0 + std::abs(w[i]))) moved = true;
    }
    if (all_done || !moved) break;
  }

  res.roots = std::move(w);
  res.iterations = it;
  res.converged = true;
  for (std::size_t i = 0; i < n; ++i) {
    double floor_i;
    const double pv = std::abs(eval_with_floor(a, res.roots[i], &floor_i));
    res.max_residual = std::max(res.max_residual, pv);
    if (pv > std::max(1e-9 * maxc, 8.0 * kEps * floor_i)) res.converged = false;
  }
  return res;
}

}  // namespace xlab
