#pragma once

#include <vector>

#include <Eigen/Core>

#include "xlab/common.hpp"
#include "xlab/measure.hpp"

namespace xlab {

struct MonicPolynomial {
  int n = 0;
  std::vector<cd> lower;  // a_0 .. a_{n-1}; the leading coefficient is 1

  cd eval(cd z) const;
  std::vector<cd> coeffs() const;  // length n+1, low to high, last entry 1
};

struct ExtremalSolution {
  MonicPolynomial poly;
  double q = 2.0;
  double norm_q = 0.0;  // achieved L^q(mu) norm
  int iterations = 0;
  double residual = 0.0;  // relative objective change at the final step
  bool converged = true;
  // IRLS certifies a global minimum only for q > 1 (convex objective); for
  // q <= 1 the result is the best of several warm starts
  bool certified = true;
};

// q = 2 orthogonal structure of a discretized measure, by Householder QR of
// the sqrt(w)-scaled Vandermonde matrix.  Normal equations on these measures
// square the condition number (an atom at |z| = 2 drives the Gram condition
// past 1e24 by degree 40); the QR route keeps every pivot accurate in place.
//
// Column k of the R factor orthogonalizes z^k against lower powers, so
// R_kk = ||P_k||_2 (the monic extremal norm) and C = R^{-1} holds the
// orthonormal polynomial coefficients column by column.
class MeasureFactorization {
 public:
  // Keeps a pointer to disc; the caller owns it for the object's lifetime.
  MeasureFactorization(const Discretization& disc, int n_max);

  int n_max() const { return n_max_; }
  const Discretization& disc() const { return *disc_; }
  // largest degree whose pivot ratio R_kk / ||column k|| stays above 1e-13
  int largest_usable_degree() const { return usable_; }

  double monic_norm2(int n) const;  // ||P_n||_{L^2(mu)}; 0 past the node count
  MonicPolynomial monic(int n) const;
  // square upper triangular over the built degrees (capped at the node
  // count); column k = coefficients of p_k, low to high
  const Eigen::MatrixXcd& orthonormal_coeffs() const { return C_; }
  // N x built, entry (i,k) = sqrt(w_i) p_k(z_i)
  const Eigen::MatrixXcd& weighted_values() const { return Q_; }
  const Eigen::VectorXd& sqrt_weights() const { return sqrtw_; }

 private:
  const Discretization* disc_;
  int n_max_;
  int usable_;
  Eigen::VectorXd sqrtw_;
  Eigen::VectorXd rdiag_;    // R_kk >= 0
  Eigen::MatrixXcd C_, Q_;
};

namespace detail {

struct IrlsResult {
  Eigen::VectorXcd c;
  double objective = 0.0;  // sum_i wq_i |b_i + (M c)_i|^q at the returned c
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

// Minimize sum_i wq_i |b_i + (M c)_i|^q over c by iteratively reweighted
// least squares: weights wq_i max(|u_i|, delta)^(q-2) with
// delta = 1e-12 max|u|, damped by 1/(q-1) for q > 2, stopping when the
// relative objective change drops below tol.
IrlsResult irls_affine(const Eigen::VectorXd& wq, const Eigen::VectorXcd& b,
                       const Eigen::MatrixXcd& M, double q,
                       const Eigen::VectorXcd& c0, int max_iter = 200,
                       double tol = 1e-11);

}  // namespace detail

// Monic polynomial of degree n minimizing the L^q(mu) norm.  q = 2 reads the
// answer off the factorization; other q run IRLS in the q = 2 orthonormal
// basis (unit-scale unknowns regardless of degree), warm started from the
// q = 2 solution.
ExtremalSolution solve_monic(const MeasureFactorization& fac, int n, double q);
ExtremalSolution solve_monic(const Discretization& disc, int n, double q);

// p_0 .. p_{n_max} coefficient vectors (entry k has k+1 coefficients, low to
// high).  Throws ConditioningError carrying the largest usable degree when
// the factorization degenerates before n_max.
std::vector<std::vector<cd>> orthonormal_sequence(const Discretization& disc,
                                                  int n_max);

double eval_norm(const Discretization& disc, const MonicPolynomial& poly,
                 double q);

// L^1 non-uniqueness scan on a symmetric atomic line measure: for each a in
// the grid, the best monic candidate of the form (z - a) Q(z) with
// deg Q = n - 1, reported as (a, L^1 norm).  A genuinely flat section of the
// table exhibits distinct minimizers side by side.
struct L1ScanRow {
  double a = 0.0;
  double norm = 0.0;
};
struct L1ScanResult {
  std::vector<L1ScanRow> rows;
  double min_norm = 0.0;
  // extent of the grid points whose norm sits within 1e-10 of the minimum
  double flat_lo = 0.0, flat_hi = 0.0;
  int flat_count = 0;
};
L1ScanResult l1_nonuniqueness_scan(const Discretization& mu, int n,
                                   const std::vector<double>& a_grid);

}  // namespace xlab
