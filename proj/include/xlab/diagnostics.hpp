#pragma once

#include <functional>
#include <vector>

#include "xlab/common.hpp"
#include "xlab/conformal.hpp"
#include "xlab/extremal.hpp"
#include "xlab/measure.hpp"

namespace xlab {

// Shared knobs for the degree sweeps.  Zero means "derive from the degree
// grid": n_theta at least 8 nodes per degree (so boundary harmonics up to
// q*n stay below the trapezoid alias limit), n_r enough Gauss-Legendre nodes
// to integrate r^{q n} exactly against the radial density.
struct DiagOptions {
  int n_theta = 0;
  int n_r = 0;
  // |phi| level bounding the "deep interior" compact set in weak_moment_table
  double r_compact = 0.9;
  // zero-attraction ball radius; 0 = half the atom's separation distance
  double delta = 0.0;
  // workers for the per-degree loop; every degree writes only its own rows,
  // so the output is identical for any value
  int threads = 1;
};

// ------------------------------------------------------------- norm ratios

// One degree of the extremal-norm ratio sweep.  lower/upper bracket the raw
// q-th power ||P_n||^q: the lower bound integrates r^{qn} against the
// per-level geometric mean of the annulus weight, the upper bounds evaluate
// the monic trial polynomials F_{n-k} * B_k on the same nodes, where B_k is
// the degree-k extremal polynomial of the boundary measure (k = 0, 1, 2).
struct NormRatioRow {
  int n = 0;
  double norm_q = 0.0;     // achieved ||P_n||_q
  double ratio = 0.0;      // ||P_n||^q / c_{qn}
  double root_norm = 0.0;  // ||P_n||^{1/n}, the regularity probe (-> 1)
  double lower = 0.0;
  double upper[3] = {0.0, 0.0, 0.0};
  bool converged = false;
};

struct NormRatioResult {
  std::vector<NormRatioRow> rows;
  double prediction = 0.0;  // limit of the ratio column
  bool szego = true;        // false: log-mean diverged, prediction is 0
  double plateau = 0.0;     // mean ratio over the last quarter of degrees
};

// ||P_n||^q / c_{qn}(tau) over the degree grid, against the predicted limit
// (geometric mean of the boundary density times |phi(z_j)|^q over exterior
// atoms).  Solver failures mark the row and the sweep continues.
NormRatioResult norm_ratio_sequence(const RegionMeasure& mu, double q,
                                    const std::vector<int>& n_list,
                                    const DiagOptions& opt = {});

// ---------------------------------------------------- Faber weak moments

// Moments of |F_n|^q d(mu) / c_{qn} against phi^k: both the straight entry
// and the index-shifted one (F_{n-k} with the same normalizer), which share
// the limit integral e^{ik theta} h(e^{i theta}) d nu(theta).
struct FaberMomentRow {
  int k = 0;
  int n = 0;
  cd value{0.0, 0.0};
  cd shifted{0.0, 0.0};
  cd limit{0.0, 0.0};
};

struct FaberMomentResult {
  std::vector<FaberMomentRow> rows;
};

FaberMomentResult faber_weak_limit(const RegionMeasure& mu, double q,
                                   const std::vector<int>& k_list,
                                   const std::vector<int>& n_list,
                                   const DiagOptions& opt = {});

// ------------------------------------------------- extremal weak moments

// Moments of the unit-mass densities |p_n|^q d(mu) with p_n = P_n/||P_n||_q.
// kernel_moment is the q = 2 reproducing-kernel variant
// integral phi^k K_n(z,z)/(n+1) d(mu); it depends on mu alone, so it is
// reported for every q.  All entries tend to 0 for k >= 1 (the limit measure
// is the equilibrium measure, whose pushed moments vanish).
struct WeakMomentRow {
  int k = 0;
  int n = 0;
  cd moment{0.0, 0.0};
  cd kernel_moment{0.0, 0.0};
};

// Mass of |p_n|^q d(mu) on the deep interior (nodes with |phi| <= r_compact,
// or where the inverse map reports the point below its working annulus) and
// on the exterior atoms; both tend to 0.
struct WeakMassRow {
  int n = 0;
  double interior_mass = 0.0;
  double atom_mass = 0.0;
  bool converged = false;
};

struct WeakMomentResult {
  std::vector<WeakMomentRow> rows;
  std::vector<WeakMassRow> mass;
  double r_compact = 0.9;
};

WeakMomentResult weak_moment_table(const RegionMeasure& mu, double q,
                                   const std::vector<int>& k_list,
                                   const std::vector<int>& n_list,
                                   const DiagOptions& opt = {});

// ------------------------------------------------------- zero attraction

struct ZeroTraceRow {
  int n = 0;
  cd nearest{0.0, 0.0};  // root of P_n closest to the atom
  double distance = 0.0;
  int within_delta = 0;  // number of roots inside the delta-ball
  bool roots_converged = false;
};

struct AtomZeroTrace {
  cd atom{0.0, 0.0};
  double delta = 0.0;
  std::vector<ZeroTraceRow> rows;
  // least-squares slope of log(distance) against n; geometric attraction
  // shows up as a strictly negative value
  double slope = 0.0;
  // first probed degree from which the ball holds exactly one root through
  // the end of the grid; -1 if that never stabilizes
  int exactly_one_from = -1;
};

struct ZeroAttractionResult {
  std::vector<AtomZeroTrace> atoms;
};

// Tracks, per exterior atom, the nearest zero of P_n and the population of
// the surrounding delta-ball over the degree grid.
ZeroAttractionResult zero_attraction_trace(const RegionMeasure& mu, double q,
                                           const std::vector<int>& n_list,
                                           const DiagOptions& opt = {});

// ----------------------------------------------------- strong asymptotics

struct StrongOptions : DiagOptions {
  // comparison measure exponent: |y|^2 as stated, |y|^q with the flag set
  bool kappa_exponent_q = false;
  // z-plane evaluation points; empty = |phi(z)| in {1.5, 2, 3} on 8 rays
  std::vector<cd> sample_points;
};

struct StrongRatioRow {
  int n = 0;
  cd z{0.0, 0.0};
  // | Lambda_n(z) S(phi(z)) / (phi(z)^{n-m} S(inf)) - 1 |
  double deviation = 0.0;
  // | Lambda_n(z) / B_{n-m}(z) - 1 | with B the extremal polynomial of the
  // weighted boundary measure kappa
  double stout_deviation = 0.0;
  bool converged = false;
};

struct StrongRatioResult {
  std::vector<StrongRatioRow> rows;
  int m = 0;  // exterior atom count; Lambda_n has degree n - m
  bool kappa_exponent_q = false;
};

// Pointwise comparison of the deflated extremal polynomial Lambda_n
// (P_n divided by its m atom-bound zeros, located by the root finder and
// removed by synthetic division) against phi^{n-m} times the exterior Szego
// factor of h nu' |y(psi(e^{i theta}))|^q.  Sample points with
// |phi(z)| < 1.05 are rejected up front.
StrongRatioResult strong_ratio_field(const RegionMeasure& mu, double q,
                                     const std::vector<int>& n_list,
                                     const StrongOptions& opt = {});

// The default sample grid: psi(R e^{2 pi i j / 8}) for R in {1.5, 2, 3}.
std::vector<cd> default_strong_samples(const ExteriorMap& map);

// --------------------------------------------------------- radial moments

struct MomentRatioRow {
  int n = 0;
  double ratio = 0.0;  // c_{q(n+1)} / c_{qn}
  double root = 0.0;   // c_{qn}^{1/(qn)}
  // c_{qn} * log2(max(qn,2))^2: bounded below for the sparse geometric
  // family even though n * c_{2n} -> 0 fails there
  double log2sq_scaled = 0.0;
};

struct MomentRatioResult {
  std::vector<MomentRatioRow> rows;
  // finite-n reading of "1 is in the support": the last ratio sits within
  // 4 max(1,q)/n of 1.  A point mass at 1 - eps defeats any finite probe
  // once eps < 1/n, which is the honest resolution limit.
  bool one_in_support = false;
};

// Moment diagnostics of the radial factor alone (normalized to unit mass).
MomentRatioResult moment_ratio_trace(const RadialMeasure& tau, double q,
                                     const std::vector<int>& n_list);

// ----------------------------------------------------- cubic level curves

struct LemniscateRow {
  int n = 0;           // degree solved is 3n
  double ratio = 0.0;  // ||P_{3n}||^q / c_{qn}
  bool converged = false;
};

struct LemniscateResult {
  std::vector<LemniscateRow> rows;
  // geometric mean of the pushforward boundary density 2 pi h(z)/|z|^2
  double prediction = 0.0;
};

// Norm ratios on the cubic level-curve measure (three petals of
// |z^3 - 1| = r stacked against tau).  The bound proved for the boundary
// limit is one-sided; the experiment reports the trend.
LemniscateResult lemniscate_ratio(const RadialMeasure& tau,
                                  const std::function<double(cd)>& h,
                                  double q, const std::vector<int>& n_list,
                                  int n_theta = 512, int n_r = 48);

// --------------------------------------------------- mean-value identity

struct PsiintRow {
  cd x{0.0, 0.0};
  double r = 0.0;
  double q = 0.0;
  double lhs = 0.0;  // quadrature of log|psi(r e^{i theta}) - x|^q
  double rhs = 0.0;  // q log|phi(x)|
};

// Tabulates the circular-mean identity over a grid of exterior points,
// radii, and exponents.
std::vector<PsiintRow> psiint_grid(const ExteriorMap& map,
                                   const std::vector<cd>& points,
                                   const std::vector<double>& radii,
                                   const std::vector<double>& qs);

}  // namespace xlab
