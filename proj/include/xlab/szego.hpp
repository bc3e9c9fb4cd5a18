#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "xlab/common.hpp"
#include "xlab/conformal.hpp"
#include "xlab/measure.hpp"

namespace xlab {

// log-mean of a nonnegative density on the circle, exp'd:
// exp(integral of log(density) dtheta/2pi), with the log clamped at -50 per
// node.  Throws DomainError when the clamp binds on quadrature weight beyond
// rounding (density vanishes on a whole arc, failing the Szego condition);
// isolated zeros pass because nodes never sit exactly on them.
double log_geometric_mean(const std::function<double(double)>& density,
                          const std::vector<double>& splits = {},
                          int order = 2048);
double geometric_mean(const std::function<double(double)>& density,
                      const std::vector<double>& splits = {},
                      int order = 2048);

// Exterior Szego function of a boundary density gamma'(theta):
//
//   S(z; q) = exp( -(1/(2 q pi)) integral log gamma'(theta)
//                   (e^{i theta} + z)/(e^{i theta} - z) dtheta ),  |z| > 1
//
// S(infinity; q) = (geometric mean of gamma')^{1/q}, and |S|^q recovers the
// density in the radial limit.  Quadrature order grows like 40/(|z|-1) as z
// approaches the circle (the Herglotz kernel's pole sets the resolution),
// capped at 2^22 nodes; points with |z| <= 1 + 1e-8 are rejected.
class SzegoFunction {
 public:
  SzegoFunction(double q, std::function<double(double)> density,
                std::vector<double> splits = {}, int base_order = 512);

  cd eval(cd z) const;
  double at_infinity() const;  // geometric mean ^ (1/q)
  double q() const { return q_; }

 private:
  double q_;
  std::function<double(double)> log_density_;  // clamped at -50
  std::vector<double> splits_;
  int base_order_;
  double log_mean_;
};

// Predicted limit of ||P_n||^q / c_{qn}(tau): the geometric mean of
// h(e^{i theta}) nu'(theta) times the product of |phi(z_j)|^q over exterior
// atoms.  Boundary atoms, sigma1, and sigma2 do not enter (and that absence
// is itself a tested claim).  A non-Szego angular part reports value 0 with
// szego = false instead of throwing.
struct PredictedLimit {
  double value = 0.0;
  bool szego = true;
};
PredictedLimit predicted_limit(const RegionMeasure& mu, double q);

// Mean-value identity for the exterior map: for x outside the region and
// r in [rho, 1],
//
//   integral log|psi(r e^{i theta}) - x|^q dtheta/2pi  ==  q log|phi(x)|.
//
// Returns (lhs by quadrature, rhs by the inverse map); the caller compares.
std::pair<double, double> psiint_check(const ExteriorMap& map, cd x, double r,
                                       double q);

}  // namespace xlab
