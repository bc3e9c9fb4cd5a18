#include "xlab/extremal.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "xlab/kernels.hpp"

namespace xlab {

cd MonicPolynomial::eval(cd z) const {
  cd acc(1.0);  // leading coefficient
  for (int k = n - 1; k >= 0; --k) acc = acc * z + lower[k];
  return acc;
}

std::vector<cd> MonicPolynomial::coeffs() const {
  std::vector<cd> c = lower;
  c.push_back(cd(1.0));
  return c;
}

// ---------------------------------------------------------- factorization

MeasureFactorization::MeasureFactorization(const Discretization& disc,
                                           int n_max)
    : disc_(&disc), n_max_(n_max) {
  if (n_max < 0) throw DomainError("factorization: n_max must be >= 0");
  const std::size_t N = disc.size();
  if (N == 0) throw DomainError("factorization: empty discretization");
  const int cols = n_max + 1;
  // N nodes support at most degree N - 1; build what they support and let
  // largest_usable_degree report the cap instead of refusing up front
  const int built = std::min<int>(cols, (int)N);

  sqrtw_.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    if (!(disc.weight[i] > 0.0))
      throw DomainError("factorization: non-positive node weight");
    sqrtw_(i) = std::sqrt(disc.weight[i]);
  }

  Eigen::MatrixXcd B(N, built);
  for (std::size_t i = 0; i < N; ++i) B(i, 0) = sqrtw_(i);
  for (int k = 1; k < built; ++k)
    for (std::size_t i = 0; i < N; ++i) B(i, k) = B(i, k - 1) * disc.node[i];
  Eigen::VectorXd colnorm(built);
  for (int k = 0; k < built; ++k) colnorm(k) = B.col(k).norm();

  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(B);
  Eigen::MatrixXcd R = qr.matrixQR()
                           .topRows(built)
                           .triangularView<Eigen::Upper>();
  Q_ = qr.householderQ() * Eigen::MatrixXcd::Identity(N, built);

  // rotate each column so the diagonal of R is real and nonnegative
  for (int k = 0; k < built; ++k) {
    const cd d = R(k, k);
    if (std::abs(d) > 0.0) {
      const cd ph = d / std::abs(d);
      R.row(k) *= std::conj(ph);
      Q_.col(k) *= ph;
    }
  }
  // degrees past the node count keep rdiag 0: a monic polynomial with that
  // many roots to spend vanishes on every node, so its L2 minimum really is 0
  rdiag_.setZero(cols);
  usable_ = -1;
  bool healthy = true;
  for (int k = 0; k < built; ++k) {
    rdiag_(k) = R(k, k).real();
    healthy = healthy && rdiag_(k) > 1e-13 * colnorm(k);
    if (healthy) usable_ = k;
  }
  if (usable_ < 0)
    throw ConditioningError("factorization: weight mass is degenerate", -1);

  C_ = R.triangularView<Eigen::Upper>().solve(
      Eigen::MatrixXcd::Identity(built, built));
}

double MeasureFactorization::monic_norm2(int n) const {
  if (n < 0 || n > n_max_) throw DomainError("monic_norm2: degree out of range");
  return rdiag_(n);
}

MonicPolynomial MeasureFactorization::monic(int n) const {
  if (n < 0 || n > n_max_) throw DomainError("monic: degree out of range");
  if (n > usable_)
    throw ConditioningError("monic: degree beyond the usable range", usable_);
  MonicPolynomial p;
  p.n = n;
  p.lower.resize(n);
  for (int k = 0; k < n; ++k) p.lower[k] = C_(k, n) * rdiag_(n);
  return p;
}

// ---------------------------------------------------------------- IRLS

namespace detail {

IrlsResult irls_affine(const Eigen::VectorXd& wq, const Eigen::VectorXcd& b,
                       const Eigen::MatrixXcd& M, double q,
                       const Eigen::VectorXcd& c0, int max_iter, double tol) {
  const std::size_t N = b.size();
  const int m = (int)M.cols();
  IrlsResult out;
  out.c = c0;

  Eigen::VectorXcd u = b;
  if (m > 0) u.noalias() += M * out.c;

  std::vector<double> t(N);
  const auto objective = [&](const Eigen::VectorXcd& v) {
    kern::abs2_many(v.data(), N, t.data());
    return kern::wpow_sum(wq.data(), t.data(), N, 0.5 * q);
  };
  double obj = objective(u);
  out.objective = obj;
  Eigen::VectorXcd best_c = out.c;
  double best_obj = obj;

  if (m == 0) {  // nothing to optimize
    out.converged = true;
    return out;
  }

  const double alpha = q > 2.0 ? 1.0 / (q - 1.0) : 1.0;
  Eigen::VectorXd om(N);
  int stall = 0;  // iterations since the best objective last improved
  for (int it = 1; it <= max_iter; ++it) {
    double umax = 0.0;
    for (std::size_t i = 0; i < N; ++i) umax = std::max(umax, std::abs(u(i)));
    const double floor = 1e-12 * std::max(umax, 1e-300);
    for (std::size_t i = 0; i < N; ++i)
      om(i) = wq(i) * std::pow(std::max(std::abs(u(i)), floor), q - 2.0);

    // weighted least squares step: min_c sum om |b + M c|^2
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(m, m);
    const Eigen::MatrixXcd Ms = om.cwiseSqrt().asDiagonal() * M;
    A.selfadjointView<Eigen::Lower>().rankUpdate(Ms.adjoint());
    const Eigen::VectorXcd rhs = -(M.adjoint() * (om.asDiagonal() * b));
    const Eigen::VectorXcd step =
        Eigen::MatrixXcd(A.selfadjointView<Eigen::Lower>()).ldlt().solve(rhs);

    const Eigen::VectorXcd cn = out.c + alpha * (step - out.c);
    Eigen::VectorXcd un = b;
    un.noalias() += M * cn;
    const double objn = objective(un);
    out.iterations = it;
    out.residual = std::abs(objn - obj) / std::max(obj, 1e-300);
    out.c = cn;
    u.swap(un);
    obj = objn;
    stall = objn < best_obj * (1.0 - tol) ? 0 : stall + 1;
    if (objn < best_obj) {
      best_obj = objn;
      best_c = cn;
    }
    if (out.residual < tol) {
      out.converged = true;
      break;
    }
    // near q = 1 the support set can keep flipping while the objective sits
    // still; a stagnant best value is the honest stopping signal then
    if (stall >= 12) {
      out.converged = true;
      break;
    }
  }
  out.c = best_c;
  out.objective = best_obj;
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------- solvers

ExtremalSolution solve_monic(const MeasureFactorization& fac, int n,
                             double q) {
  if (!(q > 0.0)) throw DomainError("solve_monic: q must be positive");
  if (n > fac.largest_usable_degree())
    throw ConditioningError("solve_monic: degree beyond the usable range",
                            fac.largest_usable_degree());
  ExtremalSolution sol;
  sol.q = q;
  sol.poly = fac.monic(n);

  if (q == 2.0) {
    sol.norm_q = fac.monic_norm2(n);
    return sol;
  }

  const Discretization& disc = fac.disc();
  const std::size_t N = disc.size();
  Eigen::VectorXd wq(N);
  for (std::size_t i = 0; i < N; ++i)
    wq(i) = std::pow(disc.weight[i], 1.0 - 0.5 * q);

  const Eigen::MatrixXcd& Q = fac.weighted_values();
  const Eigen::VectorXcd b = fac.monic_norm2(n) * Q.col(n);
  const Eigen::MatrixXcd M = Q.leftCols(n);
  const Eigen::VectorXcd c0 = Eigen::VectorXcd::Zero(n);

  // the reweighted step contracts slowly near q = 1, so that regime gets a
  // larger budget (each step is a small n x n solve; this stays cheap)
  const int budget = q <= 1.0 ? 1500 : 400;
  detail::IrlsResult best = detail::irls_affine(wq, b, M, q, c0, budget);
  sol.certified = q > 1.0;
  if (q <= 1.0 && n > 0) {
    // non-convex regime: try shifted starts and keep the best objective
    for (int s = 0; s < 2; ++s) {
      Eigen::VectorXcd cs = Eigen::VectorXcd::Zero(n);
      cs(n - 1) = s == 0 ? cd(0.25, 0.0) : cd(-0.1, 0.2);
      const detail::IrlsResult r = detail::irls_affine(wq, b, M, q, cs, budget);
      if (r.objective < best.objective) best = r;
    }
  }

  sol.iterations = best.iterations;
  sol.residual = best.residual;
  sol.converged = best.converged;
  sol.norm_q = std::pow(best.objective, 1.0 / q);

  // back to monomial coefficients: monic part plus the p-basis correction
  const Eigen::MatrixXcd& C = fac.orthonormal_coeffs();
  Eigen::VectorXcd coef = Eigen::VectorXcd::Zero(fac.n_max() + 1);
  coef.head(n + 1) = C.col(n).head(n + 1) * fac.monic_norm2(n);
  if (n > 0) coef.head(n) += C.topLeftCorner(n, n) * best.c;
  sol.poly.n = n;
  sol.poly.lower.assign(coef.data(), coef.data() + n);
  return sol;
}

ExtremalSolution solve_monic(const Discretization& disc, int n, double q) {
  const MeasureFactorization fac(disc, n);
  return solve_monic(fac, n, q);
}

std::vector<std::vector<cd>> orthonormal_sequence(const Discretization& disc,
                                                  int n_max) {
  const MeasureFactorization fac(disc, n_max);
  if (fac.largest_usable_degree() < n_max)
    throw ConditioningError("orthonormal_sequence: factorization degenerates",
                            fac.largest_usable_degree());
  const Eigen::MatrixXcd& C = fac.orthonormal_coeffs();
  std::vector<std::vector<cd>> out(n_max + 1);
  for (int k = 0; k <= n_max; ++k) {
    out[k].resize(k + 1);
    for (int j = 0; j <= k; ++j) out[k][j] = C(j, k);
  }
  return out;
}

double eval_norm(const Discretization& disc, const MonicPolynomial& poly,
                 double q) {
  if (!(q > 0.0)) throw DomainError("eval_norm: q must be positive");
  const std::size_t N = disc.size();
  const std::vector<cd> coef = poly.coeffs();
  std::vector<cd> vals(N);
  kern::horner_many(coef.data(), coef.size(), disc.node.data(), N,
                    vals.data());
  std::vector<double> t(N);
  kern::abs2_many(vals.data(), N, t.data());
  const double obj = kern::wpow_sum(disc.weight.data(), t.data(), N, 0.5 * q);
  return std::pow(obj, 1.0 / q);
}

// ---------------------------------------------------------------- L1 scan

L1ScanResult l1_nonuniqueness_scan(const Discretization& mu, int n,
                                   const std::vector<double>& a_grid) {
  if (n < 1 || n % 2 == 0)
    throw DomainError("l1_nonuniqueness_scan: n must be odd");
  if (a_grid.empty()) throw DomainError("l1_nonuniqueness_scan: empty grid");

  // the construction needs mu(A) = mu(-A); verify atoms pair up exactly
  const std::size_t N = mu.size();
  for (std::size_t i = 0; i < N; ++i) {
    if (std::abs(mu.node[i].imag()) > 1e-12)
      throw DomainError("l1_nonuniqueness_scan: measure must sit on the line");
    bool paired = false;
    for (std::size_t j = 0; j < N && !paired; ++j)
      paired = std::abs(mu.node[j] + mu.node[i]) < 1e-12 &&
               std::abs(mu.weight[j] - mu.weight[i]) < 1e-12;
    if (!paired)
      throw DomainError("l1_nonuniqueness_scan: measure is not symmetric");
  }

  L1ScanResult out;
  out.rows.reserve(a_grid.size());
  for (double a : a_grid) {
    double norm;
    if (n == 1) {
      norm = 0.0;
      for (std::size_t i = 0; i < N; ++i)
        norm += mu.weight[i] * std::abs(mu.node[i].real() - a);
    } else {
      // best monic Q of degree n-1 against the |x - a|-reweighted measure
      Discretization md = mu;
      for (std::size_t i = 0; i < N; ++i)
        md.weight[i] *= std::abs(md.node[i].real() - a);
      // nodes at x == a drop out; keep weights positive for the solver
      for (auto& w : md.weight) w = std::max(w, 1e-300);
      norm = solve_monic(md, n - 1, 1.0).norm_q;
    }
    out.rows.push_back({a, norm});
  }

  out.min_norm = out.rows.front().norm;
  for (const auto& r : out.rows) out.min_norm = std::min(out.min_norm, r.norm);
  bool first = true;
  for (const auto& r : out.rows)
    if (r.norm <= out.min_norm + 1e-10 * std::max(1.0, out.min_norm)) {
      if (first) out.flat_lo = out.flat_hi = r.a;
      out.flat_lo = std::min(out.flat_lo, r.a);
      out.flat_hi = std::max(out.flat_hi, r.a);
      ++out.flat_count;
      first = false;
    }
  return out;
}

}  // namespace xlab
