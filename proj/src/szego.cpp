#include "xlab/szego.hpp"

#include <algorithm>
#include <cmath>

#include "xlab/quadrature.hpp"

namespace xlab {
namespace {

double clamped_log(double v) {
  return v > 0.0 ? std::max(std::log(v), -50.0) : -50.0;
}

}  // namespace

double log_geometric_mean(const std::function<double(double)>& density,
                          const std::vector<double>& splits, int order) {
  const Quad1D rule = circle_rule(order, splits);
  double s = 0.0, floored = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double lv = clamped_log(density(rule.x[i]));
    s += rule.w[i] * lv;
    if (lv <= -50.0) floored += rule.w[i];
  }
  // nodes never land exactly on an isolated zero, so the clamp binding on
  // measurable weight means the density vanishes on a whole arc and the true
  // log-integral diverges
  if (floored > 1e-6)
    throw DomainError(
        "geometric_mean: density fails the Szego condition (log-density at "
        "the -50 clamp on positive measure)");
  return s;
}

double geometric_mean(const std::function<double(double)>& density,
                      const std::vector<double>& splits, int order) {
  return std::exp(log_geometric_mean(density, splits, order));
}

// ---------------------------------------------------------------- S(z; q)

SzegoFunction::SzegoFunction(double q, std::function<double(double)> density,
                             std::vector<double> splits, int base_order)
    : q_(q), splits_(std::move(splits)), base_order_(std::max(base_order, 64)) {
  if (!(q > 0.0)) throw DomainError("SzegoFunction: q must be positive");
  if (!density) throw DomainError("SzegoFunction: density is required");
  log_density_ = [d = std::move(density)](double t) {
    return clamped_log(d(t));
  };
  log_mean_ = 0.0;
  double floored = 0.0;
  const Quad1D rule = circle_rule(2048, splits_);
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double lv = log_density_(rule.x[i]);
    log_mean_ += rule.w[i] * lv;
    if (lv <= -50.0) floored += rule.w[i];
  }
  if (floored > 1e-6)
    throw DomainError("SzegoFunction: density fails the Szego condition");
}

double SzegoFunction::at_infinity() const { return std::exp(log_mean_ / q_); }

cd SzegoFunction::eval(cd z) const {
  const double az = std::abs(z);
  if (az <= 1.0 + 1e-8)
    throw DomainError("SzegoFunction::eval: |z| must exceed 1 + 1e-8");
  // the integrand's nearest complex singularity sits log|z| off the real
  // theta axis; 40/(|z|-1) nodes push the trapezoid error below ~1e-16
  const double need = 40.0 / (az - 1.0);
  const int order = (int)std::min<double>(
      1 << 22, std::max<double>(base_order_, std::ceil(need)));
  const Quad1D rule = circle_rule(order, splits_);
  cd acc(0.0);
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const cd e = std::polar(1.0, rule.x[i]);
    acc += rule.w[i] * log_density_(rule.x[i]) * ((e + z) / (e - z));
  }
  return std::exp(-acc / q_);
}

// ---------------------------------------------------------------- limits

PredictedLimit predicted_limit(const RegionMeasure& mu, double q) {
  if (!(q > 0.0)) throw DomainError("predicted_limit: q must be positive");
  PredictedLimit out;
  if (!mu.angular.szego()) {
    out.szego = false;
    out.value = 0.0;
    return out;
  }
  // split the log-mean into the angular part (closed form when the family
  // has one) and the h part
  double lm = mu.angular.log_density_mean();
  const auto hv = mu.h.value;
  lm += log_geometric_mean(
      [&hv](double t) { return hv(cd(std::cos(t), std::sin(t))); },
      mu.h.splits);
  double atoms = 0.0;
  for (const auto& [z, alpha] : mu.exterior_atoms)
    atoms += q * std::log(std::abs(mu.map.phi(z)));
  out.value = std::exp(lm + atoms);
  return out;
}

std::pair<double, double> psiint_check(const ExteriorMap& map, cd x, double r,
                                       double q) {
  if (!(r >= map.rho() - 1e-12 && r <= 1.0 + 1e-12))
    throw DomainError("psiint_check: r must lie in [rho, 1]");
  const double rhs_mod = std::abs(map.phi(x));  // throws if x is inside
  if (rhs_mod < 1.0 - 1e-9)
    throw DomainError("psiint_check: x lies inside the region");

  // pick the order from the gap between x and the r-level curve
  double gap = 1e300, deriv = 1.0;
  for (int j = 0; j < 256; ++j) {
    const double t = TWO_PI * (j + 0.5) / 256;
    const cd w = std::polar(r, t);
    gap = std::min(gap, std::abs(map.psi(w) - x));
    deriv = std::max(deriv, std::abs(map.psi_prime(w)));
  }
  const double sigma = gap / (r * deriv + 1e-300);
  const int order = (int)std::min<double>(
      1 << 20, std::max(1024.0, std::ceil(60.0 / std::max(sigma, 1e-6))));

  const Quad1D rule = circle_rule(order, {});
  double lhs = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const cd w = std::polar(r, rule.x[i]);
    lhs += rule.w[i] * std::log(std::abs(map.psi(w) - x));
  }
  return {q * lhs, q * std::log(rhs_mod)};
}

}  // namespace xlab
