#include "xlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

#include <Eigen/Dense>

#include "xlab/quadrature.hpp"

namespace xlab {
namespace {

double wrap_angle(double t) {
  t = std::fmod(t, TWO_PI);
  return t < 0.0 ? t + TWO_PI : t;
}

// sparse geometric family: locations 1 - 2^-j, masses (6/pi^2) j^-2
constexpr double SPARSE_NORM = 6.0 / (PI * PI);

std::vector<std::pair<double, double>> sparse_atoms(int count) {
  std::vector<std::pair<double, double>> a;
  a.reserve(count);
  for (int j = 1; j <= count; ++j)
    a.emplace_back(1.0 - std::ldexp(1.0, -j), SPARSE_NORM / (double(j) * j));
  return a;
}

}  // namespace

// ---------------------------------------------------------------- radial

RadialMeasure RadialMeasure::delta_one() {
  RadialMeasure m;
  m.atoms.emplace_back(1.0, 1.0);
  return m;
}

RadialMeasure RadialMeasure::uniform(double lo) {
  if (!(lo >= 0.0 && lo < 1.0))
    throw DomainError("radial uniform: need 0 <= lo < 1");
  RadialMeasure m;
  m.family = Family::uniform;
  m.lo = lo;
  const double c = 1.0 / (1.0 - lo);
  m.density = [c](double) { return c; };
  return m;
}

RadialMeasure RadialMeasure::area() {
  RadialMeasure m;
  m.family = Family::area;
  m.density = [](double r) { return 2.0 * r; };
  return m;
}

RadialMeasure RadialMeasure::one_minus_r() {
  RadialMeasure m;
  m.family = Family::one_minus_r;
  m.density = [](double r) { return 2.0 * (1.0 - r); };
  return m;
}

RadialMeasure RadialMeasure::power(double alpha, double lo) {
  if (alpha <= -1.0) throw DomainError("radial power: need alpha > -1");
  if (!(lo >= 0.0 && lo < 1.0))
    throw DomainError("radial power: need 0 <= lo < 1");
  RadialMeasure m;
  m.family = Family::power;
  m.alpha = alpha;
  m.lo = lo;
  const double c =
      (alpha + 1.0) / (1.0 - std::pow(lo, alpha + 1.0));
  m.density = [c, alpha](double r) { return c * std::pow(r, alpha); };
  return m;
}

RadialMeasure RadialMeasure::sparse_geometric() {
  RadialMeasure m;
  m.family = Family::sparse_geometric;
  m.atoms = sparse_atoms(60);
  return m;
}

RadialMeasure RadialMeasure::from_atoms(
    std::vector<std::pair<double, double>> a) {
  RadialMeasure m;
  for (const auto& [r, mass] : a) {
    if (!(r >= 0.0 && r <= 1.0 + 1e-12))
      throw DomainError("radial atom outside [0,1]");
    if (!(mass > 0.0)) throw DomainError("radial atom with non-positive mass");
  }
  m.atoms = std::move(a);
  for (auto& [r, mass] : m.atoms) r = std::min(r, 1.0);
  return m;
}

double RadialMeasure::total_mass() const {
  // the sparse family stands for the full infinite atom list (mass exactly 1
  // by the pi^2/6 normalization); its materialized atoms are a tail-truncated
  // stand-in used only if the measure is ever put on a grid
  if (family == Family::sparse_geometric) return 1.0;
  double s = 0.0;
  for (const auto& [r, mass] : atoms) s += mass;
  if (density) s += integrate_adaptive(density, lo, 1.0);
  return s;
}

double radial_moment(const RadialMeasure& tau, double t) {
  if (t < 0.0) throw DomainError("radial_moment: t must be >= 0");
  if (tau.family == RadialMeasure::Family::sparse_geometric) {
    // c_t = 1 - (6/pi^2) sum_j (1 - (1-2^-j)^t) / j^2 over the full infinite
    // list: the summand decays like t 2^-j past j ~ log2 t, so a logarithmic
    // number of terms gives full precision no matter how large t is.
    const int terms =
        std::max<int>(200, (int)(20.0 * std::log2(2.0 + t)) + 40);
    double defect = 0.0;
    for (int j = terms; j >= 1; --j) {
      const double one_minus_rjt =
          -std::expm1(t * std::log1p(-std::ldexp(1.0, -j)));
      defect += one_minus_rjt / (double(j) * j);
    }
    return 1.0 - SPARSE_NORM * defect;
  }
  double s = 0.0;
  for (const auto& [r, m] : tau.atoms) s += m * std::pow(r, t);
  if (tau.density) {
    const auto f = [&](double r) { return std::pow(r, t) * tau.density(r); };
    s += integrate_adaptive(f, tau.lo, 1.0);
  }
  return s;
}

// ---------------------------------------------------------------- angular

AngularMeasure AngularMeasure::uniform() {
  AngularMeasure m;
  m.density = [](double) { return 1.0; };
  m.log_mean_closed = 0.0;
  return m;
}

AngularMeasure AngularMeasure::abs_linear_sq(cd c) {
  if (std::abs(c) >= 1.0)
    throw DomainError("angular abs_linear_sq: need |c| < 1");
  AngularMeasure m;
  m.density = [c](double t) {
    const cd v = 1.0 - c * cd(std::cos(t), std::sin(t));
    return std::norm(v);
  };
  m.log_mean_closed = 0.0;  // log|1 - c e^{it}| has mean zero for |c| < 1
  return m;
}

AngularMeasure AngularMeasure::one_plus_cos() {
  AngularMeasure m;
  m.density = [](double t) { return 1.0 + std::cos(t); };
  m.log_mean_closed = -std::log(2.0);  // 1+cos t = 2 cos^2(t/2)
  return m;
}

AngularMeasure AngularMeasure::two_level(double a, double b, double t0,
                                         double t1) {
  if (!(a > 0.0 && b > 0.0))
    throw DomainError("angular two_level: levels must be positive");
  t0 = wrap_angle(t0);
  t1 = wrap_angle(t1);
  if (t0 == t1) throw DomainError("angular two_level: empty arc");
  AngularMeasure m;
  m.density = [a, b, t0, t1](double t) {
    t = wrap_angle(t);
    const bool in = t0 < t1 ? (t >= t0 && t < t1) : (t >= t0 || t < t1);
    return in ? a : b;
  };
  m.splits = {t0, t1};
  const double frac = wrap_angle(t1 - t0) / TWO_PI;
  m.log_mean_closed = frac * std::log(a) + (1.0 - frac) * std::log(b);
  return m;
}

double AngularMeasure::log_density_mean() const {
  if (log_mean_closed) return *log_mean_closed;
  const Quad1D rule = circle_rule(2048, splits);
  double s = 0.0, floored = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double d = density(rule.x[i]);
    const double lv = d > 0.0 ? std::log(d) : -std::numeric_limits<double>::infinity();
    if (lv <= -50.0) {
      s += rule.w[i] * -50.0;
      floored += rule.w[i];
    } else {
      s += rule.w[i] * lv;
    }
  }
  // isolated zeros never push quadrature nodes under the clamp, so a binding
  // clamp on measurable weight means the density vanishes on a whole arc and
  // the true log-integral is -infinity
  if (floored > 1e-6) return -std::numeric_limits<double>::infinity();
  return s;
}

// ---------------------------------------------------------------- weight h

HWeight HWeight::constant(double v) {
  if (!(v > 0.0)) throw DomainError("h: constant must be positive");
  HWeight h;
  h.value = [v](cd) { return v; };
  return h;
}

HWeight HWeight::two_level(double inner, double outer, double t0, double t1) {
  if (!(inner > 0.0 && outer > 0.0))
    throw DomainError("h two_level: levels must be positive");
  t0 = wrap_angle(t0);
  t1 = wrap_angle(t1);
  HWeight h;
  h.value = [inner, outer, t0, t1](cd w) {
    const double t = wrap_angle(std::arg(w));
    const bool in = t0 < t1 ? (t >= t0 && t < t1) : (t >= t0 || t < t1);
    return in ? inner : outer;
  };
  h.splits = {t0, t1};
  return h;
}

HWeight HWeight::exp_cos(double eps) {
  HWeight h;
  h.value = [eps](cd w) { return std::exp(eps * w.real()); };
  return h;
}

// ---------------------------------------------------------------- measures

const char* tag_name(NodeTag t) {
  switch (t) {
    case NodeTag::bulk: return "bulk";
    case NodeTag::sigma1: return "sigma1";
    case NodeTag::sigma2: return "sigma2";
    case NodeTag::atom_exterior: return "atom_exterior";
    case NodeTag::atom_boundary: return "atom_boundary";
  }
  return "?";
}

RegionMeasure RegionMeasure::product(ExteriorMap map, RadialMeasure radial,
                                     AngularMeasure angular, HWeight h) {
  RegionMeasure m;
  m.map = std::move(map);
  m.radial = std::move(radial);
  m.angular = std::move(angular);
  m.h = std::move(h);
  return m;
}

std::function<double(double)> RegionMeasure::boundary_density() const {
  const auto hv = h.value;
  const auto nu = angular.density;
  return [hv, nu](double t) {
    return hv(cd(std::cos(t), std::sin(t))) * nu(t);
  };
}

std::vector<double> RegionMeasure::boundary_splits() const {
  std::vector<double> s = angular.splits;
  s.insert(s.end(), h.splits.begin(), h.splits.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

namespace {

// winding number of the boundary curve psi(e^{i t}) around z
bool strictly_inside(const ExteriorMap& map, cd z) {
  const int M = 720;
  double winding = 0.0;
  double min_dist = 1e300;
  cd prev = map.psi(cd(1.0, 0.0)) - z;
  double scale = 1.0;
  for (int k = 1; k <= M; ++k) {
    const double t = TWO_PI * k / M;
    const cd cur = map.psi(cd(std::cos(t), std::sin(t))) - z;
    min_dist = std::min(min_dist, std::abs(cur));
    scale = std::max(scale, std::abs(cur));
    winding += std::arg(cur / prev);
    prev = cur;
  }
  if (min_dist < 1e-6 * scale) return false;  // too close to the boundary
  return std::lround(winding / TWO_PI) != 0;
}

}  // namespace

void RegionMeasure::validate() const {
  std::vector<std::string> bad;

  // h strictly positive on a sampling of the annulus
  {
    double hmin = 1e300;
    const double radii[] = {map.rho(), 0.5 * (map.rho() + 1.0), 1.0};
    for (double r : radii)
      for (int j = 0; j < 96; ++j) {
        const double t = TWO_PI * (j + 0.37) / 96;
        hmin = std::min(hmin, h.value(r * cd(std::cos(t), std::sin(t))));
      }
    if (!(hmin > 0.0)) bad.push_back("h is not strictly positive on the annulus");
  }

  // radial support must stay inside the map's annulus for non-disk maps
  if (map.kind() != ExteriorMap::Kind::disk) {
    const double rho = map.rho();
    if (radial.density && radial.lo < rho - 1e-12)
      bad.push_back("radial density extends below the annulus radius rho");
    for (const auto& [r, mass] : radial.atoms)
      if (r < rho - 1e-12)
        bad.push_back("radial atom below the annulus radius rho");
  }
  for (const auto& [r, mass] : radial.atoms) {
    if (!(mass > 0.0)) bad.push_back("radial atom with non-positive mass");
    if (r > 1.0 + 1e-12) bad.push_back("radial atom above 1");
  }
  for (const auto& [t, mass] : angular.atoms)
    if (!(mass > 0.0)) bad.push_back("angular atom with non-positive mass");

  for (const auto& [z, wgt] : sigma1) {
    if (!(wgt > 0.0)) bad.push_back("sigma1 node with non-positive weight");
    if (!strictly_inside(map, z))
      bad.push_back("sigma1 node is not strictly inside the region");
  }
  for (const auto& [w, wgt] : sigma2) {
    if (!(wgt > 0.0)) bad.push_back("sigma2 node with non-positive weight");
    const double aw = std::abs(w);
    if (aw < map.rho() * (1.0 - 1e-9) || aw > 1.0 - 1e-6)
      bad.push_back("sigma2 node modulus outside [rho, 1)");
  }
  for (const auto& [z, a] : exterior_atoms) {
    if (!(a > 0.0)) bad.push_back("exterior atom with non-positive mass");
    bool outside = false;
    try {
      outside = std::abs(map.phi(z)) > 1.0 + 1e-6;
    } catch (const std::exception&) {
      outside = false;
    }
    if (!outside)
      bad.push_back("exterior atom is not strictly outside the region");
  }
  for (const auto& [z, b] : boundary_atoms) {
    if (!(b > 0.0)) bad.push_back("boundary atom with non-positive mass");
    bool on = false;
    try {
      on = std::abs(std::abs(map.phi(z)) - 1.0) <= 1e-6;
    } catch (const std::exception&) {
      on = false;
    }
    if (!on) bad.push_back("boundary atom is not on the boundary curve");
  }
  if (!bad.empty()) throw ConfigError(std::move(bad));
}

Discretization discretize(const RegionMeasure& mu, int n_theta, int n_r) {
  if (n_theta < 64) throw DomainError("discretize: n_theta must be >= 64");
  // n_r only sizes the Gauss-Legendre rule against a radial density; purely
  // atomic radial parts never touch it
  if (mu.radial.density && n_r < 16)
    throw DomainError("discretize: n_r must be >= 16 for a radial density");
  mu.validate();

  const std::vector<double> splits = mu.boundary_splits();
  const Quad1D th = circle_rule(n_theta, splits);
  const Quad1D th_ref = circle_rule(2 * n_theta + 17, splits);

  // radial nodes: Gauss-Legendre against the density, atoms exact
  std::vector<std::pair<double, double>> rad;  // (r, weight)
  if (mu.radial.density) {
    const Quad1D gl = gauss_legendre(n_r, mu.radial.lo, 1.0);
    for (int i = 0; i < n_r; ++i)
      rad.emplace_back(gl.x[i], gl.w[i] * mu.radial.density(gl.x[i]));
  }
  rad.insert(rad.end(), mu.radial.atoms.begin(), mu.radial.atoms.end());

  // angular nodes: quadrature carries nu', atoms carry their mass directly
  struct ANode { double theta, w; };
  std::vector<ANode> ang, ang_ref;
  ang.reserve(th.x.size() + mu.angular.atoms.size());
  for (std::size_t i = 0; i < th.x.size(); ++i)
    ang.push_back({th.x[i], th.w[i] * mu.angular.density(th.x[i])});
  for (std::size_t i = 0; i < th_ref.x.size(); ++i)
    ang_ref.push_back({th_ref.x[i], th_ref.w[i] * mu.angular.density(th_ref.x[i])});
  for (const auto& [t, m] : mu.angular.atoms) {
    ang.push_back({wrap_angle(t), m});
    ang_ref.push_back({wrap_angle(t), m});
  }

  Discretization d;
  d.node.reserve(rad.size() * ang.size() + mu.sigma1.size() +
                 mu.sigma2.size() + mu.exterior_atoms.size() +
                 mu.boundary_atoms.size());

  double bulk_mass = 0.0, ref_mass = 0.0;
  for (const auto& [r, wr] : rad) {
    for (const auto& a : ang) {
      const cd w = r * cd(std::cos(a.theta), std::sin(a.theta));
      const double wgt = wr * a.w * mu.h.value(w);
      bulk_mass += wgt;
      if (wgt <= 0.0) continue;  // a vanishing density is fine; keep the
                                 // node list strictly positive
      d.node.push_back(mu.map.psi(w));
      d.weight.push_back(wgt);
      d.tag.push_back(NodeTag::bulk);
    }
    for (const auto& a : ang_ref) {
      const cd w = r * cd(std::cos(a.theta), std::sin(a.theta));
      ref_mass += wr * a.w * mu.h.value(w);
    }
  }
  if (std::abs(bulk_mass - ref_mass) >
      3e-10 * std::max(std::abs(ref_mass), 1e-300))
    throw ConvergenceError(
        "discretize: theta resolution fails the mass check; raise n_theta or "
        "declare the discontinuity angles",
        n_theta, std::abs(bulk_mass - ref_mass) / std::abs(ref_mass));

  double extra_mass = 0.0;
  const auto append = [&](cd z, double wgt, NodeTag tag) {
    d.node.push_back(z);
    d.weight.push_back(wgt);
    d.tag.push_back(tag);
    extra_mass += wgt;
  };
  for (const auto& [z, wgt] : mu.sigma1) append(z, wgt, NodeTag::sigma1);
  for (const auto& [w, wgt] : mu.sigma2)
    append(mu.map.psi(w), wgt, NodeTag::sigma2);
  for (const auto& [z, a] : mu.exterior_atoms)
    append(z, a, NodeTag::atom_exterior);
  for (const auto& [z, b] : mu.boundary_atoms)
    append(z, b, NodeTag::atom_boundary);

  d.total_mass = ref_mass + extra_mass;
  return d;
}

Discretization atomic_line(
    const std::vector<std::pair<double, double>>& atoms) {
  if (atoms.empty()) throw DomainError("atomic_line: no atoms");
  Discretization d;
  for (const auto& [x, m] : atoms) {
    if (!(m > 0.0)) throw DomainError("atomic_line: non-positive mass");
    d.node.push_back(cd(x, 0.0));
    d.weight.push_back(m);
    d.tag.push_back(NodeTag::bulk);
    d.total_mass += m;
  }
  return d;
}

cd integrate(const Discretization& disc, const std::function<cd(cd)>& f) {
  cd s(0.0);
  for (std::size_t i = 0; i < disc.size(); ++i)
    s += disc.weight[i] * f(disc.node[i]);
  return s;
}

Eigen::MatrixXcd gram_matrix(const Discretization& disc, int n) {
  if (n < 0) throw DomainError("gram_matrix: n must be >= 0");
  if (disc.size() < std::size_t(n) + 1)
    throw DomainError("gram_matrix: fewer nodes than n+1");
  const std::size_t N = disc.size();
  Eigen::MatrixXcd B(N, n + 1);
  for (std::size_t i = 0; i < N; ++i) B(i, 0) = std::sqrt(disc.weight[i]);
  for (int k = 1; k <= n; ++k)
    for (std::size_t i = 0; i < N; ++i) B(i, k) = B(i, k - 1) * disc.node[i];
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  G.selfadjointView<Eigen::Lower>().rankUpdate(B.adjoint());
  G = Eigen::MatrixXcd(G.selfadjointView<Eigen::Lower>());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G,
                                                     Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  if (ev.size() > 0 && ev(0) < 1e-13 * std::max(ev(ev.size() - 1), 0.0))
    std::cerr << "gram_matrix: conditioning warning, pivot ratio "
              << (ev(0) / std::max(ev(ev.size() - 1), 1e-300)) << "\n";
  // (B^adj B)_{kj} = sum_i w_i z_i^j conj(z_i)^k, so the transpose has the
  // documented orientation G_{jk} = integral z^j conj(z)^k
  return G.transpose();
}

Discretization mobius_pushforward(const Discretization& disc, cd x0) {
  if (std::abs(x0) >= 1.0)
    throw DomainError("mobius_pushforward: |x0| must be < 1");
  Discretization out = disc;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const cd z = out.node[i];
    if (std::abs(z) > 1.0 + 1e-10)
      throw DomainError("mobius_pushforward: node outside the closed disk");
    out.node[i] = (z - x0) / (1.0 - std::conj(x0) * z);
  }
  return out;
}

Discretization lemniscate_measure(const RadialMeasure& tau,
                                  const std::function<double(cd)>& h,
                                  int n_theta, int n_r) {
  if (n_theta < 64) throw DomainError("lemniscate_measure: n_theta >= 64");
  const double r_cap = 1.0 - 1e-3;
  for (const auto& [r, m] : tau.atoms)
    if (!(r > 0.0 && r <= r_cap))
      throw DomainError(
          "lemniscate_measure: level outside (0, 1-1e-3]; branches are not "
          "separable near the triple point");

  // rotation invariance of h under the lemniscate's Z3 symmetry
  const cd omega = std::polar(1.0, TWO_PI / 3.0);
  for (int s = 0; s < 24; ++s) {
    const cd z = std::polar(0.3 + 0.04 * s, 0.37 * s);
    const double v0 = h(z), v1 = h(omega * z);
    if (std::abs(v0 - v1) > 1e-9 * std::max(1.0, std::abs(v0)))
      throw DomainError("lemniscate_measure: h is not 2pi/3 rotation invariant");
  }

  std::vector<std::pair<double, double>> levels;
  if (tau.density) {
    const Quad1D gl = gauss_legendre(n_r, tau.lo, r_cap);
    for (int i = 0; i < n_r; ++i)
      levels.emplace_back(gl.x[i], gl.w[i] * tau.density(gl.x[i]));
  }
  levels.insert(levels.end(), tau.atoms.begin(), tau.atoms.end());

  Discretization d;
  const double dtheta = TWO_PI / n_theta;
  for (const auto& [r, wr] : levels) {
    for (int b = 0; b < 3; ++b) {
      const cd rot = std::polar(1.0, TWO_PI * b / 3.0);
      for (int j = 0; j < n_theta; ++j) {
        const double t = dtheta * j;
        const cd u = 1.0 + r * cd(std::cos(t), std::sin(t));
        const cd z = rot * std::pow(u, 1.0 / 3.0);
        const double wgt = wr * h(z) * r * dtheta / (3.0 * std::norm(z));
        d.node.push_back(z);
        d.weight.push_back(wgt);
        d.tag.push_back(NodeTag::bulk);
        d.total_mass += wgt;
      }
    }
  }
  return d;
}

}  // namespace xlab
