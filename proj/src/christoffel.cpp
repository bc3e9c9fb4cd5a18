#include "xlab/christoffel.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace xlab {
namespace {

double plateau(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const std::size_t take = std::max<std::size_t>(1, v.size() / 4);
  double s = 0.0;
  for (std::size_t i = v.size() - take; i < v.size(); ++i) s += v[i];
  return s / take;
}

}  // namespace

ChristoffelResult lambda_kernel(const Discretization& disc, cd z, int n_max) {
  const MeasureFactorization fac(disc, n_max);
  if (fac.largest_usable_degree() < n_max)
    throw ConditioningError("lambda_kernel: factorization degenerates",
                            fac.largest_usable_degree());
  const Eigen::MatrixXcd& C = fac.orthonormal_coeffs();

  std::vector<cd> zp(n_max + 1);
  zp[0] = 1.0;
  for (int k = 1; k <= n_max; ++k) zp[k] = zp[k - 1] * z;

  ChristoffelResult out;
  out.z = z;
  out.q = 2.0;
  out.method = "kernel";
  double K = 0.0;
  for (int j = 0; j <= n_max; ++j) {
    cd pj(0.0);
    for (int k = 0; k <= j; ++k) pj += C(k, j) * zp[k];
    K += std::norm(pj);
    out.degrees.push_back(j);
    out.kernel_partial.push_back(K);
    out.lambda.push_back(1.0 / K);
  }
  out.limit_estimate = plateau(out.lambda);
  return out;
}

double lambda_opt(const MeasureFactorization& fac, cd z, int n, double q,
                  bool* converged) {
  if (!(q > 0.0)) throw DomainError("lambda_opt: q must be positive");
  if (n < 0) throw DomainError("lambda_opt: n must be >= 0");
  const Discretization& disc = fac.disc();
  const std::size_t N = disc.size();
  if (n == 0) {  // only Q == 1 satisfies the constraint
    if (converged) *converged = true;
    double s = 0.0;
    for (double w : disc.weight) s += w;
    return s;
  }
  if (n - 1 > fac.largest_usable_degree())
    throw ConditioningError("lambda_opt: degree beyond the usable range",
                            fac.largest_usable_degree());

  Eigen::VectorXd wq(N);
  for (std::size_t i = 0; i < N; ++i)
    wq(i) = std::pow(disc.weight[i], 1.0 - 0.5 * q);
  Eigen::VectorXcd b(N);
  for (std::size_t i = 0; i < N; ++i) b(i) = fac.sqrt_weights()(i);
  Eigen::MatrixXcd M = fac.weighted_values().leftCols(n);
  for (std::size_t i = 0; i < N; ++i) M.row(i) *= (disc.node[i] - z);

  const detail::IrlsResult r = detail::irls_affine(
      wq, b, M, q, Eigen::VectorXcd::Zero(n));
  if (converged) *converged = r.converged;
  return r.objective;
}

double lambda_opt(const Discretization& disc, cd z, int n, double q) {
  const MeasureFactorization fac(disc, std::max(n - 1, 0));
  return lambda_opt(fac, z, n, q, nullptr);
}

ChristoffelResult lambda_trace(const Discretization& disc, cd z,
                               const std::vector<int>& degrees, double q) {
  if (degrees.empty()) throw DomainError("lambda_trace: empty degree list");
  const int top = *std::max_element(degrees.begin(), degrees.end());

  if (q == 2.0) {
    const ChristoffelResult full = lambda_kernel(disc, z, top);
    ChristoffelResult out;
    out.z = z;
    out.q = q;
    out.method = "kernel";
    for (int n : degrees) {
      out.degrees.push_back(n);
      out.lambda.push_back(full.lambda[n]);
      out.kernel_partial.push_back(full.kernel_partial[n]);
    }
    out.limit_estimate = plateau(out.lambda);
    return out;
  }

  const MeasureFactorization fac(disc, std::max(top - 1, 0));
  ChristoffelResult out;
  out.z = z;
  out.q = q;
  out.method = "constrained-opt";
  for (int n : degrees) {
    bool conv = true;
    out.degrees.push_back(n);
    out.lambda.push_back(lambda_opt(fac, z, n, q, &conv));
    out.converged = out.converged && conv;
  }
  out.limit_estimate = plateau(out.lambda);
  return out;
}

MobiusCheck mobius_invariance_check(const Discretization& disc, cd x0,
                                    double q,
                                    const std::vector<int>& degrees) {
  MobiusCheck out;
  out.at_x0 = lambda_trace(disc, x0, degrees, q);
  const Discretization pushed = mobius_pushforward(disc, x0);
  out.at_zero_pushed = lambda_trace(pushed, cd(0.0), degrees, q);
  return out;
}

}  // namespace xlab
