#include "xlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <utility>

#include <Eigen/Core>

#include "xlab/kernels.hpp"
#include "xlab/quadrature.hpp"
#include "xlab/roots.hpp"
#include "xlab/szego.hpp"

namespace xlab {
namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_degrees(const std::vector<int>& n_list, const char* who) {
  if (n_list.empty())
    throw DomainError(std::string(who) + ": degree grid is empty");
  int prev = 0;
  for (int n : n_list) {
    if (n <= prev)
      throw DomainError(std::string(who) +
                        ": degree grid must be positive and strictly "
                        "increasing");
    prev = n;
  }
}

// Angular resolution: at least 8 nodes per degree so the boundary harmonics
// of |P_n|^q stay below the trapezoid alias limit for the q in common use.
int pick_n_theta(const DiagOptions& opt, int max_n) {
  if (opt.n_theta > 0) return opt.n_theta;
  const int nt = std::max(512, 8 * max_n);
  return (nt + 63) / 64 * 64;
}

// Radial resolution: Gauss-Legendre is exact to degree 2 n_r - 1, and the
// stiffest radial integrand in a sweep is r^{q n} times the density.
int pick_n_r(const DiagOptions& opt, double q, int max_n) {
  if (opt.n_r > 0) return opt.n_r;
  const int need = static_cast<int>(std::ceil(0.5 * (q * max_n + 8.0)));
  return std::max(64, (need + 15) / 16 * 16);
}

cd horner1(const std::vector<cd>& c, cd z) {
  if (c.empty()) return cd(0.0, 0.0);
  cd acc = c.back();
  for (std::size_t j = c.size() - 1; j-- > 0;) acc = acc * z + c[j];
  return acc;
}

std::vector<cd> conv(const std::vector<cd>& a, const std::vector<cd>& b) {
  std::vector<cd> out(a.size() + b.size() - 1, cd(0.0, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// |p(z_i)|^q over the nodes (p given low-to-high).
std::vector<double> powq_values(const std::vector<cd>& coeff,
                                const std::vector<cd>& nodes, double q) {
  std::vector<cd> v(nodes.size());
  kern::horner_many(coeff.data(), coeff.size(), nodes.data(), nodes.size(),
                    v.data());
  std::vector<double> t(nodes.size());
  kern::abs2_many(v.data(), v.size(), t.data());
  if (q != 2.0) {
    const double e = 0.5 * q;
    for (double& x : t) x = std::pow(x, e);
  }
  return t;
}

// phi at every node, with a validity flag.  Nodes the inverse map rejects
// sit strictly below the working annulus (deep-interior sigma nodes of a
// non-disk map); the weak-limit claims live on the outer annulus, so such
// nodes carry test-function value zero rather than killing the sweep.
struct PhiCache {
  std::vector<cd> val;
  std::vector<char> ok;
};

PhiCache phi_at_nodes(const ExteriorMap& map, const Discretization& disc) {
  PhiCache pc;
  pc.val.resize(disc.size());
  pc.ok.assign(disc.size(), 1);
  for (std::size_t i = 0; i < disc.size(); ++i) {
    try {
      pc.val[i] = map.phi(disc.node[i]);
    } catch (const DomainError&) {
      pc.val[i] = cd(0.0, 0.0);
      pc.ok[i] = 0;
    } catch (const ConvergenceError&) {
      pc.val[i] = cd(0.0, 0.0);
      pc.ok[i] = 0;
    }
  }
  return pc;
}

std::vector<cd> phi_powers(const PhiCache& pc, int k) {
  std::vector<cd> out(pc.val.size());
  for (std::size_t i = 0; i < pc.val.size(); ++i)
    out[i] = pc.ok[i] ? std::pow(pc.val[i], k) : cd(0.0, 0.0);
  return out;
}

// The boundary factor of the measure as a discretization of its own:
// circle-rule nodes pushed through psi against h nu', the angular point
// masses, and (optionally) the boundary atoms.  `extra` multiplies every
// node weight (used for the |y|^e comparison measure).
Discretization boundary_measure(const RegionMeasure& mu, int n_theta,
                                const std::function<double(cd)>& extra,
                                bool with_boundary_atoms) {
  Discretization d;
  const auto dens = mu.boundary_density();
  const Quad1D th = circle_rule(n_theta, mu.boundary_splits());
  for (std::size_t i = 0; i < th.x.size(); ++i) {
    const cd w = std::polar(1.0, th.x[i]);
    const cd z = mu.map.psi(w);
    double wt = th.w[i] * dens(th.x[i]);
    if (extra) wt *= extra(z);
    if (wt <= 0.0) continue;
    d.node.push_back(z);
    d.weight.push_back(wt);
    d.tag.push_back(NodeTag::bulk);
    d.total_mass += wt;
  }
  for (const auto& [theta, mass] : mu.angular.atoms) {
    const cd w = std::polar(1.0, theta);
    const cd z = mu.map.psi(w);
    double wt = mass * mu.h.value(w);
    if (extra) wt *= extra(z);
    d.node.push_back(z);
    d.weight.push_back(wt);
    d.tag.push_back(NodeTag::atom_boundary);
    d.total_mass += wt;
  }
  if (with_boundary_atoms) {
    for (const auto& [zeta, beta] : mu.boundary_atoms) {
      double wt = beta;
      if (extra) wt *= extra(zeta);
      d.node.push_back(zeta);
      d.weight.push_back(wt);
      d.tag.push_back(NodeTag::atom_boundary);
      d.total_mass += wt;
    }
  }
  return d;
}

// Run fn(i) for i in [0, count) on `threads` workers.  Iterations must be
// independent and write only to their own slots; results are then identical
// for any thread count.
void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (int i = t; i < count; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

double finite_tail_mean(const std::vector<double>& v) {
  std::vector<double> f;
  for (double x : v)
    if (std::isfinite(x)) f.push_back(x);
  if (f.empty()) return kNaN;
  const std::size_t q = (f.size() + 3) / 4;
  double acc = 0.0;
  for (std::size_t i = f.size() - q; i < f.size(); ++i) acc += f[i];
  return acc / double(q);
}

}  // namespace

// ------------------------------------------------------------- norm ratios

NormRatioResult norm_ratio_sequence(const RegionMeasure& mu, double q,
                                    const std::vector<int>& n_list,
                                    const DiagOptions& opt) {
  check_degrees(n_list, "norm_ratio_sequence");
  if (!(q > 0.0)) throw DomainError("norm_ratio_sequence: q must be positive");
  mu.validate();

  const int max_n = n_list.back();
  const int n_theta = pick_n_theta(opt, max_n);
  const int n_r = pick_n_r(opt, q, max_n);
  const Discretization disc = discretize(mu, n_theta, n_r);

  NormRatioResult out;
  const PredictedLimit pl = predicted_limit(mu, q);
  out.prediction = pl.value;
  out.szego = pl.szego;

  // Radial rule for the lower bound: integrate r^{qn} against the per-level
  // geometric mean of the annulus weight h(r e^{i theta}) nu'(theta).
  const double nu_logmean = mu.angular.log_density_mean();
  std::vector<std::pair<double, double>> rad;  // (r, tau-weight)
  if (mu.radial.density) {
    const Quad1D g = gauss_legendre(n_r, mu.radial.lo, 1.0);
    for (std::size_t i = 0; i < g.x.size(); ++i)
      rad.emplace_back(g.x[i], g.w[i] * mu.radial.density(g.x[i]));
  }
  for (const auto& [r, m] : mu.radial.atoms) rad.emplace_back(r, m);
  std::vector<double> gm_r(rad.size());
  {
    const Quad1D hq = circle_rule(512, mu.h.splits);
    for (std::size_t j = 0; j < rad.size(); ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < hq.x.size(); ++i) {
        const double hv =
            mu.h.value(std::polar(std::max(rad[j].first, 1e-12), hq.x[i]));
        acc += hq.w[i] * std::log(std::max(hv, 1e-300));
      }
      gm_r[j] = std::exp(acc + nu_logmean);
    }
  }

  // Boundary trial factors B_0 = 1, B_1, B_2 for the upper bounds.
  const Discretization bdisc =
      boundary_measure(mu, std::max(512, n_theta), nullptr, true);
  std::vector<std::vector<cd>> bcoef(3);
  bcoef[0] = {cd(1.0, 0.0)};
  try {
    MeasureFactorization bfac(bdisc, 2);
    for (int k = 1; k <= 2; ++k) bcoef[k] = solve_monic(bfac, k, q).poly.coeffs();
  } catch (const std::exception&) {
    // boundary solve degenerated; upper-bound columns report as missing
  }

  MeasureFactorization fac(disc, max_n);
  out.rows.assign(n_list.size(), NormRatioRow{});
  parallel_for(int(n_list.size()), std::max(1, opt.threads), [&](int idx) {
    const int n = n_list[idx];
    NormRatioRow& row = out.rows[idx];
    row.n = n;
    const double cqn = radial_moment(mu.radial, q * double(n));
    try {
      const ExtremalSolution s = solve_monic(fac, n, q);
      row.norm_q = s.norm_q;
      row.ratio = std::pow(s.norm_q, q) / cqn;
      row.root_norm = std::pow(s.norm_q, 1.0 / double(n));
      row.converged = s.converged;
    } catch (const std::exception&) {
      row.norm_q = row.ratio = row.root_norm = kNaN;
      row.converged = false;
    }
    double lb = 0.0;
    for (std::size_t j = 0; j < rad.size(); ++j)
      lb += rad[j].second * std::pow(rad[j].first, q * double(n)) * gm_r[j];
    row.lower = lb;
    for (int k = 0; k <= 2; ++k) {
      if (k > n || bcoef[k].empty()) {
        row.upper[k] = kNaN;
        continue;
      }
      try {
        const FaberPolynomial f = mu.map.faber(n - k);
        const std::vector<cd> prod = conv(f.coeff, bcoef[k]);
        MonicPolynomial trial;
        trial.n = n;
        trial.lower.assign(prod.begin(), prod.end() - 1);
        row.upper[k] = std::pow(eval_norm(disc, trial, q), q);
      } catch (const std::exception&) {
        row.upper[k] = kNaN;
      }
    }
  });

  std::vector<double> ratios;
  for (const auto& r : out.rows) ratios.push_back(r.ratio);
  out.plateau = finite_tail_mean(ratios);
  return out;
}

// ---------------------------------------------------- Faber weak moments

FaberMomentResult faber_weak_limit(const RegionMeasure& mu, double q,
                                   const std::vector<int>& k_list,
                                   const std::vector<int>& n_list,
                                   const DiagOptions& opt) {
  check_degrees(n_list, "faber_weak_limit");
  if (!(q > 0.0)) throw DomainError("faber_weak_limit: q must be positive");
  if (k_list.empty()) throw DomainError("faber_weak_limit: empty moment list");
  for (int k : k_list)
    if (k < 0) throw DomainError("faber_weak_limit: negative moment index");
  mu.validate();

  const int max_n = n_list.back();
  const Discretization disc =
      discretize(mu, pick_n_theta(opt, max_n), pick_n_r(opt, q, max_n));
  const PhiCache pc = phi_at_nodes(mu.map, disc);

  std::map<int, std::vector<cd>> phik;
  for (int k : k_list) phik.emplace(k, phi_powers(pc, k));

  // every Faber degree the table touches, straight and shifted
  std::set<int> degrees;
  for (int n : n_list)
    for (int k : k_list)
      if (n >= k) {
        degrees.insert(n);
        degrees.insert(n - k);
      }
  std::map<int, std::vector<double>> fq;
  for (int d : degrees)
    fq.emplace(d, powq_values(mu.map.faber(d).coeff, disc.node, q));

  // the shared limit: the k-th moment of h d nu on the circle
  std::map<int, cd> limits;
  {
    const Quad1D lr =
        circle_rule(std::max(2048, pick_n_theta(opt, max_n)),
                    mu.boundary_splits());
    const auto dens = mu.boundary_density();
    for (int k : k_list) {
      cd acc(0.0, 0.0);
      for (std::size_t i = 0; i < lr.x.size(); ++i)
        acc += lr.w[i] * dens(lr.x[i]) * std::polar(1.0, k * lr.x[i]);
      for (const auto& [theta, mass] : mu.angular.atoms)
        acc += mass * mu.h.value(std::polar(1.0, theta)) *
               std::polar(1.0, k * theta);
      limits.emplace(k, acc);
    }
  }

  FaberMomentResult out;
  for (int k : k_list) {
    const auto& pk = phik.at(k);
    for (int n : n_list) {
      if (n < k) continue;
      FaberMomentRow row;
      row.k = k;
      row.n = n;
      row.limit = limits.at(k);
      const double cqn = radial_moment(mu.radial, q * double(n));
      const auto& fn = fq.at(n);
      const auto& fs = fq.at(n - k);
      cd v(0.0, 0.0), sh(0.0, 0.0);
      for (std::size_t i = 0; i < disc.size(); ++i) {
        v += disc.weight[i] * pk[i] * fn[i];
        sh += disc.weight[i] * pk[i] * fs[i];
      }
      row.value = v / cqn;
      row.shifted = sh / cqn;
      out.rows.push_back(row);
    }
  }
  return out;
}

// ------------------------------------------------- extremal weak moments

WeakMomentResult weak_moment_table(const RegionMeasure& mu, double q,
                                   const std::vector<int>& k_list,
                                   const std::vector<int>& n_list,
                                   const DiagOptions& opt) {
  check_degrees(n_list, "weak_moment_table");
  if (!(q > 0.0)) throw DomainError("weak_moment_table: q must be positive");
  if (k_list.empty()) throw DomainError("weak_moment_table: empty moment list");
  mu.validate();

  const int max_n = n_list.back();
  const Discretization disc =
      discretize(mu, pick_n_theta(opt, max_n), pick_n_r(opt, q, max_n));
  const PhiCache pc = phi_at_nodes(mu.map, disc);
  const std::size_t N = disc.size();

  std::map<int, std::vector<cd>> phik;
  for (int k : k_list) phik.emplace(k, phi_powers(pc, k));

  // deep interior: below the working annulus, or within the compact level
  std::vector<char> interior(N, 0);
  for (std::size_t i = 0; i < N; ++i)
    interior[i] = !pc.ok[i] || std::abs(pc.val[i]) <= opt.r_compact;

  MeasureFactorization fac(disc, max_n);
  const Eigen::MatrixXcd& Q = fac.weighted_values();

  WeakMomentResult out;
  out.r_compact = opt.r_compact;

  // node masses w_i |p_n(z_i)|^q per degree (threaded; slots independent)
  std::vector<std::vector<double>> node_mass(n_list.size());
  std::vector<char> solved(n_list.size(), 0);
  parallel_for(int(n_list.size()), std::max(1, opt.threads), [&](int idx) {
    const int n = n_list[idx];
    try {
      std::vector<double> m(N);
      if (q == 2.0) {
        for (std::size_t i = 0; i < N; ++i) m[i] = std::norm(Q(i, n));
      } else {
        const ExtremalSolution s = solve_monic(fac, n, q);
        const std::vector<double> t = powq_values(s.poly.coeffs(), disc.node, q);
        const double scale = std::pow(s.norm_q, q);
        for (std::size_t i = 0; i < N; ++i)
          m[i] = disc.weight[i] * t[i] / scale;
      }
      node_mass[idx] = std::move(m);
      solved[idx] = 1;
    } catch (const std::exception&) {
      solved[idx] = 0;
    }
  });

  // reproducing-kernel running sums: w_i sum_{j<=n} |p_j(z_i)|^2
  Eigen::VectorXd ksum = Eigen::VectorXd::Zero(Eigen::Index(N));
  int kcursor = 0;

  for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
    const int n = n_list[idx];
    const bool have_kernel = n <= fac.largest_usable_degree();
    while (kcursor <= n && kcursor <= fac.largest_usable_degree()) {
      ksum += Q.col(kcursor).cwiseAbs2().real();
      ++kcursor;
    }
    for (int k : k_list) {
      WeakMomentRow row;
      row.k = k;
      row.n = n;
      const auto& pk = phik.at(k);
      if (solved[idx]) {
        cd acc(0.0, 0.0);
        for (std::size_t i = 0; i < N; ++i) acc += node_mass[idx][i] * pk[i];
        row.moment = acc;
      } else {
        row.moment = cd(kNaN, kNaN);
      }
      if (have_kernel) {
        cd acc(0.0, 0.0);
        for (std::size_t i = 0; i < N; ++i)
          acc += ksum[Eigen::Index(i)] * pk[i];
        row.kernel_moment = acc / double(n + 1);
      } else {
        row.kernel_moment = cd(kNaN, kNaN);
      }
      out.rows.push_back(row);
    }
    WeakMassRow mass;
    mass.n = n;
    mass.converged = solved[idx] != 0;
    if (solved[idx]) {
      for (std::size_t i = 0; i < N; ++i) {
        if (interior[i]) mass.interior_mass += node_mass[idx][i];
        if (disc.tag[i] == NodeTag::atom_exterior)
          mass.atom_mass += node_mass[idx][i];
      }
    } else {
      mass.interior_mass = mass.atom_mass = kNaN;
    }
    out.mass.push_back(mass);
  }
  return out;
}

// ------------------------------------------------------- zero attraction

ZeroAttractionResult zero_attraction_trace(const RegionMeasure& mu, double q,
                                           const std::vector<int>& n_list,
                                           const DiagOptions& opt) {
  check_degrees(n_list, "zero_attraction_trace");
  if (!(q > 0.0))
    throw DomainError("zero_attraction_trace: q must be positive");
  if (mu.exterior_atoms.empty())
    throw DomainError("zero_attraction_trace: measure has no exterior atoms");
  mu.validate();

  const int max_n = n_list.back();
  const Discretization disc =
      discretize(mu, pick_n_theta(opt, max_n), pick_n_r(opt, q, max_n));
  MeasureFactorization fac(disc, max_n);

  // default ball: half the atom's distance to the region and to its peers
  std::vector<cd> boundary;
  for (int i = 0; i < 512; ++i)
    boundary.push_back(mu.map.psi(std::polar(1.0, TWO_PI * i / 512.0)));

  ZeroAttractionResult out;
  for (const auto& [zj, alpha] : mu.exterior_atoms) {
    (void)alpha;
    AtomZeroTrace tr;
    tr.atom = zj;
    double sep = std::numeric_limits<double>::infinity();
    for (const cd& b : boundary) sep = std::min(sep, std::abs(zj - b));
    for (const auto& [zo, ao] : mu.exterior_atoms) {
      (void)ao;
      if (zo != zj) sep = std::min(sep, std::abs(zj - zo));
    }
    tr.delta = opt.delta > 0.0 ? opt.delta : 0.5 * sep;
    tr.rows.assign(n_list.size(), ZeroTraceRow{});
    out.atoms.push_back(std::move(tr));
  }

  std::vector<RootResult> found(n_list.size());
  std::vector<char> solved(n_list.size(), 0);
  parallel_for(int(n_list.size()), std::max(1, opt.threads), [&](int idx) {
    try {
      const ExtremalSolution s = solve_monic(fac, n_list[idx], q);
      found[idx] = poly_roots(s.poly.coeffs());
      solved[idx] = 1;
    } catch (const std::exception&) {
      solved[idx] = 0;
    }
  });

  for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
    for (auto& tr : out.atoms) {
      ZeroTraceRow& row = tr.rows[idx];
      row.n = n_list[idx];
      if (!solved[idx]) {
        row.distance = kNaN;
        row.roots_converged = false;
        continue;
      }
      const RootResult& rr = found[idx];
      row.roots_converged = rr.converged;
      double best = std::numeric_limits<double>::infinity();
      for (const cd& w : rr.roots) {
        const double d = std::abs(w - tr.atom);
        if (d < best) {
          best = d;
          row.nearest = w;
        }
        if (d <= tr.delta) ++row.within_delta;
      }
      row.distance = best;
    }
  }

  for (auto& tr : out.atoms) {
    // least-squares slope of log(distance) against n
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& row : tr.rows) {
      if (!std::isfinite(row.distance) || row.distance <= 0.0) continue;
      const double x = row.n, y = std::log(row.distance);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++cnt;
    }
    tr.slope = cnt >= 2 ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : kNaN;
    tr.exactly_one_from = -1;
    for (std::size_t idx = tr.rows.size(); idx-- > 0;) {
      if (!std::isfinite(tr.rows[idx].distance) ||
          tr.rows[idx].within_delta != 1)
        break;
      tr.exactly_one_from = tr.rows[idx].n;
    }
  }
  return out;
}

// ----------------------------------------------------- strong asymptotics

std::vector<cd> default_strong_samples(const ExteriorMap& map) {
  std::vector<cd> out;
  for (double R : {1.5, 2.0, 3.0})
    for (int j = 0; j < 8; ++j)
      out.push_back(map.psi(std::polar(R, TWO_PI * j / 8.0)));
  return out;
}

StrongRatioResult strong_ratio_field(const RegionMeasure& mu, double q,
                                     const std::vector<int>& n_list,
                                     const StrongOptions& opt) {
  check_degrees(n_list, "strong_ratio_field");
  if (!(q > 0.0)) throw DomainError("strong_ratio_field: q must be positive");
  mu.validate();
  if (!mu.angular.szego())
    throw DomainError(
        "strong_ratio_field: the angular density fails the Szego condition");

  const std::vector<cd> samples = opt.sample_points.empty()
                                      ? default_strong_samples(mu.map)
                                      : opt.sample_points;
  std::vector<cd> ws(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    ws[i] = mu.map.phi(samples[i]);  // DomainError for interior points
    if (std::abs(ws[i]) < 1.05)
      throw DomainError(
          "strong_ratio_field: sample point too close to the region "
          "(needs |phi(z)| >= 1.05)");
  }

  const int m = int(mu.exterior_atoms.size());
  const int max_n = n_list.back();
  const int n_theta = pick_n_theta(opt, max_n);
  const Discretization disc = discretize(mu, n_theta, pick_n_r(opt, q, max_n));
  MeasureFactorization fac(disc, max_n);

  // exterior comparison factor: Szego function of h nu' |y(psi(e^{it}))|^q
  std::vector<cd> atom_pos;
  for (const auto& [zj, a] : mu.exterior_atoms) {
    (void)a;
    atom_pos.push_back(zj);
  }
  const auto bdens = mu.boundary_density();
  const ExteriorMap& map = mu.map;
  const auto sdens = [bdens, atom_pos, map, q](double theta) {
    double v = bdens(theta);
    if (!atom_pos.empty()) {
      const cd z = map.psi(std::polar(1.0, theta));
      double y = 1.0;
      for (const cd& zj : atom_pos) y *= std::abs(z - zj);
      v *= std::pow(y, q);
    }
    return v;
  };
  const SzegoFunction S(q, sdens, mu.boundary_splits());
  const double S_inf = S.at_infinity();
  std::vector<cd> S_at(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) S_at[i] = S.eval(ws[i]);

  // the weighted boundary measure the deflated polynomials settle on
  const double e = opt.kappa_exponent_q ? q : 2.0;
  const auto yfac = [atom_pos, e](cd z) {
    double y = 1.0;
    for (const cd& zj : atom_pos) y *= std::abs(z - zj);
    return std::pow(y, e);
  };
  const Discretization kdisc = boundary_measure(
      mu, n_theta, atom_pos.empty() ? std::function<double(cd)>() : yfac,
      false);
  MeasureFactorization kfac(kdisc, std::max(1, max_n - m));

  StrongRatioResult out;
  out.m = m;
  out.kappa_exponent_q = opt.kappa_exponent_q;
  out.rows.assign(n_list.size() * samples.size(), StrongRatioRow{});

  parallel_for(int(n_list.size()), std::max(1, opt.threads), [&](int idx) {
    const int n = n_list[idx];
    StrongRatioRow* rows = &out.rows[idx * samples.size()];
    for (std::size_t si = 0; si < samples.size(); ++si) {
      rows[si].n = n;
      rows[si].z = samples[si];
      rows[si].deviation = rows[si].stout_deviation = kNaN;
      rows[si].converged = false;
    }
    if (n <= m) return;  // no deflated degrees yet
    try {
      const ExtremalSolution s = solve_monic(fac, n, q);
      std::vector<cd> lam = s.poly.coeffs();
      bool roots_ok = true;
      if (m > 0) {
        const RootResult rr = poly_roots(lam);
        roots_ok = rr.converged;
        std::vector<cd> pool = rr.roots;
        for (const cd& zj : atom_pos) {
          std::size_t pick = 0;
          double best = std::numeric_limits<double>::infinity();
          for (std::size_t i = 0; i < pool.size(); ++i) {
            const double d = std::abs(pool[i] - zj);
            if (d < best) {
              best = d;
              pick = i;
            }
          }
          lam = deflate(lam, pool[pick]);
          pool.erase(pool.begin() + std::ptrdiff_t(pick));
        }
      }
      const ExtremalSolution b = solve_monic(kfac, n - m, q);
      const std::vector<cd> bc = b.poly.coeffs();
      for (std::size_t si = 0; si < samples.size(); ++si) {
        const cd L = horner1(lam, samples[si]);
        const cd denom = std::pow(ws[si], n - m) * S_inf;
        rows[si].deviation = std::abs(L * S_at[si] / denom - cd(1.0, 0.0));
        rows[si].stout_deviation =
            std::abs(L / horner1(bc, samples[si]) - cd(1.0, 0.0));
        rows[si].converged = s.converged && b.converged && roots_ok;
      }
    } catch (const std::exception&) {
      // rows already carry the failure marker
    }
  });
  return out;
}

// --------------------------------------------------------- radial moments

MomentRatioResult moment_ratio_trace(const RadialMeasure& tau, double q,
                                     const std::vector<int>& n_list) {
  check_degrees(n_list, "moment_ratio_trace");
  if (!(q > 0.0)) throw DomainError("moment_ratio_trace: q must be positive");
  const double mass = tau.total_mass();
  if (!(mass > 0.0))
    throw DomainError("moment_ratio_trace: measure has no mass");

  // all in log space: an atom at r = 1/2 pushes c_t past the double
  // underflow line near t ~ 2100, where the plain quotient turns into 0/0
  const auto log_c = [&tau](double t) {
    if (tau.family == RadialMeasure::Family::sparse_geometric)
      return std::log(radial_moment(tau, t));
    double lmax = -std::numeric_limits<double>::infinity();
    for (const auto& [r, m] : tau.atoms)
      if (r > 0.0) lmax = std::max(lmax, std::log(m) + t * std::log(r));
    double s = 0.0;
    for (const auto& [r, m] : tau.atoms)
      if (r > 0.0) s += std::exp(std::log(m) + t * std::log(r) - lmax);
    double acc = std::isfinite(lmax) ? lmax + std::log(s)
                                     : -std::numeric_limits<double>::infinity();
    if (tau.density) {
      const auto f = [&](double r) { return std::pow(r, t) * tau.density(r); };
      const double d = integrate_adaptive(f, tau.lo, 1.0);
      if (d > 0.0) {
        const double ld = std::log(d);
        acc = std::isfinite(acc)
                  ? std::max(acc, ld) + std::log1p(std::exp(-std::abs(acc - ld)))
                  : ld;
      }
    }
    return acc;
  };

  MomentRatioResult out;
  const double lmass = std::log(mass);
  for (int n : n_list) {
    MomentRatioRow row;
    row.n = n;
    const double lqn = log_c(q * double(n)) - lmass;
    const double lq1 = log_c(q * double(n + 1)) - lmass;
    row.ratio = std::exp(lq1 - lqn);
    row.root = std::exp(lqn / (q * double(n)));
    const double l2 = std::log2(std::max(q * double(n), 2.0));
    row.log2sq_scaled = std::exp(lqn) * l2 * l2;
    out.rows.push_back(row);
  }
  // Finite-n support reading; a mass at 1 - eps defeats any probe shorter
  // than 1/eps, so this is a resolution statement, not a proof.
  const MomentRatioRow& last = out.rows.back();
  out.one_in_support =
      (1.0 - last.ratio) <= 4.0 * std::max(1.0, q) / double(last.n);
  return out;
}

// ----------------------------------------------------- cubic level curves

LemniscateResult lemniscate_ratio(const RadialMeasure& tau,
                                  const std::function<double(cd)>& h,
                                  double q, const std::vector<int>& n_list,
                                  int n_theta, int n_r) {
  check_degrees(n_list, "lemniscate_ratio");
  if (!(q > 0.0)) throw DomainError("lemniscate_ratio: q must be positive");
  if (!h) throw DomainError("lemniscate_ratio: weight function is required");

  const Discretization disc = lemniscate_measure(tau, h, n_theta, n_r);

  // c_t against the same capped level range the measure builder uses, so
  // numerator and normalizer see one and the same tau
  const double r_cap = 1.0 - 1e-3;
  const auto c_t = [&](double t) {
    double acc = 0.0;
    if (tau.density) {
      const Quad1D g = gauss_legendre(n_r, tau.lo, r_cap);
      for (std::size_t i = 0; i < g.x.size(); ++i)
        acc += g.w[i] * tau.density(g.x[i]) * std::pow(g.x[i], t);
    }
    for (const auto& [r, m] : tau.atoms) acc += m * std::pow(r, t);
    return acc;
  };

  // Geometric mean of the pushforward boundary density.  With t the angle
  // of the image point, the outer level curve carries density
  // 2 pi h(z(t)) / |z(t)|^2 relative to dt/2pi.  The |z|^-2 factor has zero
  // log-mean exactly (log|1 + e^it| is the boundary trace of a harmonic
  // function vanishing at 0), so it is dropped from the integrand rather
  // than integrated across its log singularity at t = pi.
  LemniscateResult out;
  {
    const Quad1D pr = circle_rule(8192, {PI});
    double acc = 0.0;
    for (std::size_t i = 0; i < pr.x.size(); ++i) {
      const cd u = cd(1.0, 0.0) + std::polar(1.0, pr.x[i]);
      const cd z = std::pow(u, 1.0 / 3.0);
      acc += pr.w[i] * std::log(std::max(TWO_PI * h(z), 1e-300));
    }
    out.prediction = std::exp(acc);
  }

  const int max_n = n_list.back();
  MeasureFactorization fac(disc, 3 * max_n);
  for (int n : n_list) {
    LemniscateRow row;
    row.n = n;
    try {
      const ExtremalSolution s = solve_monic(fac, 3 * n, q);
      row.ratio = std::pow(s.norm_q, q) / c_t(q * double(n));
      row.converged = s.converged;
    } catch (const std::exception&) {
      row.ratio = kNaN;
      row.converged = false;
    }
    out.rows.push_back(row);
  }
  return out;
}

// --------------------------------------------------- mean-value identity

std::vector<PsiintRow> psiint_grid(const ExteriorMap& map,
                                   const std::vector<cd>& points,
                                   const std::vector<double>& radii,
                                   const std::vector<double>& qs) {
  std::vector<PsiintRow> out;
  for (const cd& x : points)
    for (double r : radii)
      for (double q : qs) {
        const auto [lhs, rhs] = psiint_check(map, x, r, q);
        PsiintRow row;
        row.x = x;
        row.r = r;
        row.q = q;
        row.lhs = lhs;
        row.rhs = rhs;
        out.push_back(row);
      }
  return out;
}

}  // namespace xlab
