#include "xlab/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace xlab {
namespace {

// Golub-Welsch on the unit interval [-1,1]; cached per order.
const Quad1D& gl_unit(int n) {
  static std::map<int, Quad1D> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Quad1D q;
  q.x.resize(n);
  q.w.resize(n);
  for (int i = 0; i < n; ++i) {
    q.x[i] = es.eigenvalues()(i);
    const double v = es.eigenvectors()(0, i);
    q.w[i] = 2.0 * v * v;
  }
  return cache.emplace(n, std::move(q)).first->second;
}

}  // namespace

Quad1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre: order must be >= 1");
  const Quad1D& u = gl_unit(n);
  Quad1D q;
  q.x.resize(n);
  q.w.resize(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    q.x[i] = mid + half * u.x[i];
    q.w[i] = half * u.w[i];
  }
  return q;
}

Quad1D circle_rule(int n, const std::vector<double>& split_angles) {
  if (n < 4) throw DomainError("circle_rule: need at least 4 nodes");
  Quad1D q;
  if (split_angles.empty()) {
    q.x.resize(n);
    q.w.assign(n, 1.0 / n);
    for (int i = 0; i < n; ++i) q.x[i] = TWO_PI * i / n;
    return q;
  }

  // normalize splits into [0,2pi), sort, dedupe
  std::vector<double> s;
  for (double a : split_angles) {
    double t = std::fmod(a, TWO_PI);
    if (t < 0) t += TWO_PI;
    s.push_back(t);
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end(),
                      [](double a, double b) { return std::abs(a - b) < 1e-14; }),
          s.end());
  if (s.empty()) return circle_rule(n);

  constexpr int kPanel = 24;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double a = s[i];
    const double b = (i + 1 < s.size()) ? s[i + 1] : s[0] + TWO_PI;
    const double len = b - a;
    if (len < 1e-13) continue;
    const int want = std::max(kPanel, (int)std::lround(n * len / TWO_PI));
    const int panels = (want + kPanel - 1) / kPanel;
    for (int p = 0; p < panels; ++p) {
      const Quad1D g = gauss_legendre(kPanel, a + len * p / panels,
                                      a + len * (p + 1) / panels);
      for (int j = 0; j < kPanel; ++j) {
        q.x.push_back(g.x[j]);
        q.w.push_back(g.w[j] / TWO_PI);
      }
    }
  }
  return q;
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, int max_levels) {
  if (!(b > a)) return 0.0;
  constexpr int kOrder = 32;
  double prev = 0.0;
  for (int level = 0; level < max_levels; ++level) {
    const int panels = 1 << level;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
      const Quad1D g = gauss_legendre(kOrder, a + (b - a) * p / panels,
                                      a + (b - a) * (p + 1) / panels);
      for (int j = 0; j < kOrder; ++j) acc += g.w[j] * f(g.x[j]);
    }
    if (level > 0 &&
        std::abs(acc - prev) <= rel_tol * std::max(1e-300, std::abs(acc)))
      return acc;
    prev = acc;
  }
  return prev;
}

}  // namespace xlab
