#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "xlab/common.hpp"

namespace xlab {

// Monic polynomial part of the n-th power of the exterior inverse map's
// series at infinity.  coeff has n+1 entries, low to high; coeff[n] == 1.
struct FaberPolynomial {
  int n = 0;
  std::vector<cd> coeff;
  // set when the series tail near the truncation order is not negligible
  // (> 1e-10 relative) — raise the map's truncation_order in that case
  bool truncation_suspect = false;
  cd eval(cd z) const;
};

// Exterior conformal map psi from {|w| > 1} onto the complement of a region,
// normalized psi(w) = w + xi0 + xi1/w + ... (capacity 1, leading coefficient
// exactly 1), together with its inverse phi.  Three constructions:
//
//   disk          psi(w) = w
//   laurent       psi(w) = w + xi0 + sum_{k=1..K} xi_k w^-k, analytic and
//                 univalent on |w| > rho_tilde (checked by sampling)
//   power_family  phi(z)^p = z^p - c, the branch asymptotic to z at infinity;
//                 rho_tilde = |c|^(1/p).  For |c| = 1 the working annulus is
//                 empty (rho = 1) and only exterior/boundary evaluation is
//                 available.
//
// rho is the working annulus radius: rho_tilde < rho < 1 (defaults to the
// midpoint).  psi accepts |w| >= rho; phi returns points with |phi| >= rho
// and reports a domain error for points inside that level curve.  The disk
// map is exempt on both counts (the identity extends everywhere).
class ExteriorMap {
 public:
  enum class Kind { disk, laurent, power_family };

  static ExteriorMap disk(std::optional<double> rho = {});
  static ExteriorMap laurent(std::vector<cd> xi,
                             std::optional<double> rho_tilde = {},
                             std::optional<double> rho = {},
                             int truncation_order = 256);
  static ExteriorMap power_family(int p, cd c, std::optional<double> rho = {},
                                  int truncation_order = 256);

  Kind kind() const { return kind_; }
  double rho() const { return rho_; }
  double rho_tilde() const { return rho_tilde_; }
  double capacity() const { return 1.0; }
  // false for power_family with |c| >= 1: no rho < 1 annulus exists
  bool has_annulus() const { return rho_ < 1.0; }
  int truncation_order() const { return trunc_; }
  const std::vector<cd>& laurent_coeffs() const { return xi_; }
  int power_p() const { return power_p_; }
  cd power_c() const { return power_c_; }

  cd psi(cd w) const;
  cd psi_prime(cd w) const;
  // Inverse map.  laurent kind solves psi(w) = z by damped Newton from w = z
  // with modulus continuation on stalls (tolerance 1e-12, <= 100 iterations
  // per stage); disk and power_family are closed-form.
  cd phi(cd z) const;
  // Green function with pole at infinity: log|phi(z)|; >= 0, zero on the
  // boundary.  Domain error strictly inside.
  double green(cd z) const;

  // Faber polynomial of degree n via formal reversion of the psi series
  // (Newton series inversion to truncation_order, then an n-th series power).
  FaberPolynomial faber(int n) const;

  // m_k = integral of phi(psi(e^{i theta}))^k dtheta/2pi for k = 1..k_max;
  // all should vanish (pushforward of the equilibrium measure).  Uses the
  // midpoint variant of the trapezoid rule so branch points of degenerate
  // power-family boundaries never coincide with a node.
  // Requires quad_points >= 4 * k_max.
  std::vector<cd> equilibrium_moments(int k_max, int quad_points) const;

 private:
  ExteriorMap() = default;
  void validate_laurent_univalence() const;
  const std::vector<cd>& phi_series() const;  // lazy, cached

  Kind kind_ = Kind::disk;
  std::vector<cd> xi_;  // xi0..xiK for laurent
  int power_p_ = 0;
  cd power_c_{0.0, 0.0};
  double rho_tilde_ = 0.0;
  double rho_ = 0.5;
  int trunc_ = 256;
  mutable std::shared_ptr<std::vector<cd>> phi_series_cache_;
};

}  // namespace xlab
