#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xlab/common.hpp"
#include "xlab/measure.hpp"

namespace xlab {

enum class Experiment {
  norm_ratio,
  weak_moments,
  zeros,
  strong,
  christoffel,
  faber,
  psiint,
  l1demo,
  lemniscate,
  // auxiliary: radial moment-ratio trace, no polynomial solves involved, so
  // it stays usable at degrees far beyond what the solvers reach
  moment_ratio,
};

const char* experiment_name(Experiment e);

// A fully parsed and validated experiment description.  Parsing collects
// every problem it can find and throws a single ConfigError naming all of
// them; a RunConfig that exists is runnable.
struct RunConfig {
  Experiment experiment = Experiment::norm_ratio;
  std::vector<double> qs{2.0};
  std::vector<int> degrees;
  std::vector<int> moments{1, 2, 3, 4};
  RegionMeasure measure;

  // quadrature overrides; 0 = derive from the degree grid
  int n_theta = 0;
  int n_r = 0;

  // verdict threshold (0 = per-experiment default) and the first degree the
  // threshold binds at (-1 = last degree of the grid only)
  double tolerance = 0.0;
  int check_from = -1;

  // experiment-specific knobs
  double r_compact = 0.9;          // weak_moments interior level
  double delta = 0.0;              // zeros ball radius; 0 = auto
  double slope_max = -0.2;         // zeros: fitted log-distance slope bound
  int stable_from = 10;            // zeros: ball count must be 1 from here
  bool kappa_exponent_q = false;   // strong: comparison-measure exponent
  bool stout_binding = false;      // strong: bind the comparison series too
  std::vector<cd> samples;         // strong sample points; empty = default
  cd z{0.0, 0.0};                  // christoffel evaluation point
  std::optional<cd> x0;            // christoffel: automorphism-identity mode
  std::optional<double> target;    // christoffel: known limit value
  std::vector<cd> points;          // psiint exterior points; empty = default
  std::vector<double> radii{1.0, 0.95, 0.9};  // psiint level radii
  std::vector<double> exponents{1.0, 2.0};    // psiint q grid
  std::vector<std::pair<double, double>> line_atoms{{-1.5, 0.5}, {1.5, 0.5}};
  int l1_degree = 1;               // l1demo polynomial degree (odd)
  double a_lo = -1.5, a_hi = 1.5;  // l1demo scan interval
  int a_count = 121;               // l1demo grid size
  double flat_min_width = 0.5;     // l1demo: required flat-range width
  std::optional<double> flat_value;  // l1demo: expected value on the range
  // moment_ratio: expected outcome of the support probe, if declared
  std::optional<bool> expect_one_in_support;

  // the accepted document, re-serialized; echoed into summary.json so a run
  // can be reproduced from its own output
  std::string echo;
};

double default_tolerance(Experiment e);

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// EXTREMAL_LAB_THREADS, default 1; rejects values outside [1, 256]
int thread_count();

}  // namespace xlab
