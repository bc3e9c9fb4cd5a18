#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "xlab/common.hpp"
#include "xlab/conformal.hpp"

namespace xlab {

// ---------------------------------------------------------------- radial

// Measure on a radial interval [lo, 1]: absolutely continuous density plus
// point masses.  The t-th moment c_t = integral of r^t is the normalizing
// sequence every norm-ratio experiment divides by.
struct RadialMeasure {
  enum class Family {
    atoms_only,
    uniform,
    area,          // 2r dr on [0,1]
    one_minus_r,   // 2(1-r) dr on [0,1]
    power,         // ~ r^alpha on [lo,1], unit mass
    sparse_geometric,  // (6/pi^2) sum j^-2 delta at 1-2^-j
    custom
  };

  Family family = Family::atoms_only;
  std::function<double(double)> density;  // null when there is no a.c. part
  double lo = 0.0;                        // density support is [lo, 1]
  double alpha = 0.0;
  std::vector<std::pair<double, double>> atoms;  // (location, mass)

  static RadialMeasure delta_one();
  static RadialMeasure uniform(double lo = 0.0);
  static RadialMeasure area();
  static RadialMeasure one_minus_r();
  static RadialMeasure power(double alpha, double lo = 0.0);
  static RadialMeasure sparse_geometric();
  static RadialMeasure from_atoms(std::vector<std::pair<double, double>> a);

  double total_mass() const;
};

// c_t = integral r^t d tau, t >= 0 real.  Adaptive quadrature on the density
// plus exact atom sums; the sparse geometric family is summed in a
// tail-corrected closed form so t as large as 2^20 costs a few hundred terms.
double radial_moment(const RadialMeasure& tau, double t);

// ---------------------------------------------------------------- angular

// Measure on the circle: density relative to dtheta/2pi (so uniform == 1)
// plus point masses standing in for the singular part.
struct AngularMeasure {
  std::function<double(double)> density;  // never null
  std::vector<double> splits;             // density discontinuity angles
  std::vector<std::pair<double, double>> atoms;  // (theta, mass)
  // exact log-mean for the built-in families; quadrature fallback otherwise
  std::optional<double> log_mean_closed;

  static AngularMeasure uniform();
  // |1 - c e^{i theta}|^2 with |c| < 1; log-mean is exactly 0
  static AngularMeasure abs_linear_sq(cd c);
  // 1 + cos(theta); vanishes at pi but stays Szego (log-mean == -log 2)
  static AngularMeasure one_plus_cos();
  // value a on (t0, t1), b elsewhere; discontinuous, carries its splits
  static AngularMeasure two_level(double a, double b, double t0, double t1);

  // integral of log(density) dtheta/2pi with the integrand clamped at -50;
  // when the clamp binds on measurable quadrature weight (density zero on a
  // whole arc, not just at points) the result is -infinity
  double log_density_mean() const;
  bool szego() const { return log_density_mean() > -50.0 + 1e-9; }
};

// ---------------------------------------------------------------- weight h

// Bounded positive weight on the closed annulus {rho <= |w| <= 1}; only its
// boundary restriction h(e^{i theta}) enters predicted limits.
struct HWeight {
  std::function<double(cd)> value;  // never null
  std::vector<double> splits;       // angular discontinuities

  static HWeight constant(double v = 1.0);
  // `inner` for arg(w) in (t0, t1), `outer` elsewhere
  static HWeight two_level(double inner, double outer, double t0, double t1);
  static HWeight exp_cos(double eps);  // exp(eps * Re w), smooth
};

// ---------------------------------------------------------------- measures

enum class NodeTag : std::uint8_t {
  bulk,           // annulus product quadrature
  sigma1,         // fixed nodes strictly inside the region
  sigma2,         // annulus nodes with |w| <= r_max < 1
  atom_exterior,  // point mass outside the closed region
  atom_boundary,  // point mass on the boundary curve
};

const char* tag_name(NodeTag t);

// Quadrature realization of a measure: nodes, positive weights, provenance.
// total_mass is the independently accumulated reference mass the node
// weights are checked against.
struct Discretization {
  std::vector<cd> node;
  std::vector<double> weight;
  std::vector<NodeTag> tag;
  double total_mass = 0.0;

  std::size_t size() const { return node.size(); }
};

// Region measure: the push-forward through psi of h(w) d tau(r) d nu(theta)
// on the annulus, plus optional interior nodes (sigma1), deep-annulus nodes
// (sigma2, given in w-coordinates), exterior atoms, and boundary atoms.
struct RegionMeasure {
  ExteriorMap map = ExteriorMap::disk();
  HWeight h = HWeight::constant();
  RadialMeasure radial = RadialMeasure::delta_one();
  AngularMeasure angular = AngularMeasure::uniform();
  std::vector<std::pair<cd, double>> sigma1;          // (z, weight)
  std::vector<std::pair<cd, double>> sigma2;          // (w, weight)
  std::vector<std::pair<cd, double>> exterior_atoms;  // (z_j, alpha_j)
  std::vector<std::pair<cd, double>> boundary_atoms;  // (zeta_j, beta_j)

  static RegionMeasure product(ExteriorMap map, RadialMeasure radial,
                               AngularMeasure angular,
                               HWeight h = HWeight::constant());

  // h(e^{i theta}) nu'(theta) and the union of both split lists; this is the
  // density whose geometric mean drives every predicted limit
  std::function<double(double)> boundary_density() const;
  std::vector<double> boundary_splits() const;

  // Collects every violation and throws one ConfigError listing them: h not
  // strictly positive on the annulus, radial support below rho on a non-disk
  // map, sigma1 nodes not strictly inside (winding-number test), sigma2
  // moduli outside [rho, 1), exterior atoms with |phi| <= 1 + 1e-6, boundary
  // atoms off the curve.
  void validate() const;
};

// Tensor quadrature for the bulk (periodic trapezoid in theta, split into
// Gauss-Legendre panels at discontinuity angles; Gauss-Legendre against the
// radial density), atoms and sigma nodes appended exactly.  Throws
// ConvergenceError when the theta-resolution mass check misses the reference
// mass by more than 3e-10 relative.
Discretization discretize(const RegionMeasure& mu, int n_theta = 512,
                          int n_r = 64);

// Purely atomic measure on the real line (the L^1 non-uniqueness demo).
Discretization atomic_line(const std::vector<std::pair<double, double>>& atoms);

cd integrate(const Discretization& disc, const std::function<cd(cd)>& f);

// Moment matrix G_jk = integral z^j conj(z)^k, (n+1) x (n+1), Hermitian PSD.
Eigen::MatrixXcd gram_matrix(const Discretization& disc, int n);

// Disk automorphism z -> (z - x0)/(1 - conj(x0) z) applied to every node,
// weights unchanged.  Requires all nodes in the closed unit disk (1e-10
// slack) and |x0| < 1.
Discretization mobius_pushforward(const Discretization& disc, cd x0);

// Level-set measure for the cubic lemniscate {|z^3 - 1| < 1}: for each
// radial node r of tau (density via n_r-point Gauss-Legendre, atoms exact)
// and each of the three branches of z^3 = 1 + r e^{i theta}, arc-length
// nodes with |dz| = r dtheta / (3 |z|^2), weighted by h(z).  tau must be
// supported in (0, 1 - 1e-3]: levels closer to 1 approach the triple point
// at z = 0 and are rejected.  h must be invariant under rotation by 2pi/3
// (checked by sampling).
Discretization lemniscate_measure(const RadialMeasure& tau,
                                  const std::function<double(cd)>& h,
                                  int n_theta, int n_r = 48);

}  // namespace xlab
