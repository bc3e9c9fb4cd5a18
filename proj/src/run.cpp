#include "xlab/run.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "xlab/christoffel.hpp"
#include "xlab/diagnostics.hpp"
#include "xlab/extremal.hpp"
#include "xlab/suites.hpp"

namespace xlab {
namespace {

using json = nlohmann::json;

const double kNaN = std::numeric_limits<double>::quiet_NaN();

// shortest decimal that round-trips; the whole determinism story of the CSV
std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct CsvRow {
  std::string series;
  int n = 0;
  double q = 0.0;
  double value = 0.0;
  double prediction = 0.0;
  double deviation = 0.0;
  std::string verdict;
};

struct RunOutput {
  std::vector<CsvRow> rows;
  json checks = json::array();
  json extra = json::object();
  std::vector<std::string> errors;
};

void add_check(RunOutput& out, const std::string& name, bool pass,
               double value, double threshold) {
  json c;
  c["name"] = name;
  c["pass"] = pass;
  c["value"] = value;
  c["threshold"] = threshold;
  out.checks.push_back(c);
}

std::string verdict(bool binding, bool converged, bool ok) {
  if (!converged) return "error";
  if (!binding) return "info";
  return ok ? "pass" : "fail";
}

// deviation column: relative against a positive prediction, raw otherwise
double rel_dev(double value, double prediction) {
  if (prediction > 0.0) return (value - prediction) / prediction;
  return value;
}

int bind_from(const RunConfig& cfg, bool all_rows) {
  if (cfg.check_from >= 0) return cfg.check_from;
  if (all_rows || cfg.degrees.empty()) return 0;
  return cfg.degrees.back();
}

// the same resolution rules the diagnostics sweeps derive internally; kept
// here for the paths that discretize on their own (christoffel)
int auto_n_theta(const RunConfig& cfg, int max_n) {
  if (cfg.n_theta > 0) return cfg.n_theta;
  return (std::max(512, 8 * max_n) + 63) / 64 * 64;
}
int auto_n_r(const RunConfig& cfg, double q, int max_n) {
  if (cfg.n_r > 0) return cfg.n_r;
  const int need = static_cast<int>(std::ceil(0.5 * (q * max_n + 8.0)));
  return std::max(64, (need + 15) / 16 * 16);
}

DiagOptions diag_options(const RunConfig& cfg, int threads) {
  DiagOptions o;
  o.n_theta = cfg.n_theta;
  o.n_r = cfg.n_r;
  o.r_compact = cfg.r_compact;
  o.delta = cfg.delta;
  o.threads = threads;
  return o;
}

std::string qtag(double q) { return "[q=" + fmt(q) + "]"; }

// ---------------------------------------------------------------- drivers

void drive_norm_ratio(const RunConfig& cfg, double q, int threads,
                      RunOutput& out) {
  const NormRatioResult r =
      norm_ratio_sequence(cfg.measure, q, cfg.degrees, diag_options(cfg, threads));
  const int from = bind_from(cfg, false);
  int sandwich_violations = 0;
  for (const auto& row : r.rows) {
    const bool fin = std::isfinite(row.ratio);
    const double dev = rel_dev(row.ratio, r.prediction);
    out.rows.push_back({"norm_ratio", row.n, q, row.ratio, r.prediction, dev,
                        verdict(row.n >= from, row.converged && fin,
                                std::abs(dev) <= cfg.tolerance)});
    out.rows.push_back({"norm_ratio[root]", row.n, q, row.root_norm, 1.0,
                        row.root_norm - 1.0,
                        verdict(false, row.converged && fin, true)});
    const double cqn = radial_moment(cfg.measure.radial, q * double(row.n));
    out.rows.push_back({"norm_ratio[lower]", row.n, q, row.lower / cqn,
                        r.prediction, rel_dev(row.lower / cqn, r.prediction),
                        "info"});
    for (int k = 0; k <= 2; ++k)
      out.rows.push_back({"norm_ratio[upper" + std::to_string(k) + "]", row.n,
                          q, row.upper[k] / cqn, r.prediction,
                          rel_dev(row.upper[k] / cqn, r.prediction), "info"});
    if (fin) {
      const double normq = std::pow(row.norm_q, q);
      if (row.lower > normq * (1.0 + 1e-9) + 1e-300) ++sandwich_violations;
      for (int k = 0; k <= 2; ++k)
        if (std::isfinite(row.upper[k]) && normq > row.upper[k] * (1.0 + 1e-9))
          ++sandwich_violations;
    }
  }
  add_check(out, "sandwich" + qtag(q), sandwich_violations == 0,
            double(sandwich_violations), 0.0);
  out.extra["plateau" + qtag(q)] = r.plateau;
  out.extra["szego" + qtag(q)] = r.szego;
  out.extra["prediction" + qtag(q)] = r.prediction;
}

void drive_weak_moments(const RunConfig& cfg, double q, int threads,
                        RunOutput& out) {
  const WeakMomentResult r = weak_moment_table(cfg.measure, q, cfg.moments,
                                               cfg.degrees,
                                               diag_options(cfg, threads));
  const int from = bind_from(cfg, false);
  for (const auto& row : r.rows) {
    const std::string tag = "k=" + std::to_string(row.k);
    const double v = std::abs(row.moment);
    const double pred = row.k == 0 ? 1.0 : 0.0;
    const double dev = row.k == 0 ? v - 1.0 : v;
    out.rows.push_back({"weak_moments[" + tag + "]", row.n, q, v, pred, dev,
                        verdict(row.k >= 1 && row.n >= from, std::isfinite(v),
                                std::abs(dev) <= cfg.tolerance)});
    const double kv = std::abs(row.kernel_moment);
    out.rows.push_back({"weak_moments[kernel," + tag + "]", row.n, q, kv, pred,
                        row.k == 0 ? kv - 1.0 : kv,
                        verdict(false, std::isfinite(kv), true)});
  }
  for (const auto& m : r.mass) {
    out.rows.push_back({"weak_moments[mass=interior]", m.n, q, m.interior_mass,
                        0.0, m.interior_mass,
                        verdict(m.n >= from, m.converged,
                                m.interior_mass <= cfg.tolerance)});
    out.rows.push_back({"weak_moments[mass=atom]", m.n, q, m.atom_mass, 0.0,
                        m.atom_mass,
                        verdict(m.n >= from, m.converged,
                                m.atom_mass <= cfg.tolerance)});
  }
  out.extra["r_compact"] = r.r_compact;
}

void drive_zeros(const RunConfig& cfg, double q, int threads, RunOutput& out) {
  const ZeroAttractionResult r =
      zero_attraction_trace(cfg.measure, q, cfg.degrees, diag_options(cfg, threads));
  for (std::size_t ai = 0; ai < r.atoms.size(); ++ai) {
    const auto& tr = r.atoms[ai];
    const std::string tag = "atom=" + std::to_string(ai);
    for (const auto& row : tr.rows) {
      out.rows.push_back({"zeros[" + tag + "]", row.n, q, row.distance, 0.0,
                          row.distance,
                          verdict(false, row.roots_converged, true)});
      out.rows.push_back({"zeros[count," + tag + "]", row.n, q,
                          double(row.within_delta), 1.0,
                          double(row.within_delta - 1),
                          verdict(row.n >= cfg.stable_from,
                                  row.roots_converged,
                                  row.within_delta == 1)});
    }
    add_check(out, "slope[" + tag + "]" + qtag(q), tr.slope <= cfg.slope_max,
              tr.slope, cfg.slope_max);
    json info;
    info["atom"] = {tr.atom.real(), tr.atom.imag()};
    info["delta"] = tr.delta;
    info["exactly_one_from"] = tr.exactly_one_from;
    out.extra["zeros[" + tag + "]" + qtag(q)] = info;
  }
}

void drive_strong(const RunConfig& cfg, double q, int threads,
                  RunOutput& out) {
  StrongOptions so;
  static_cast<DiagOptions&>(so) = diag_options(cfg, threads);
  so.kappa_exponent_q = cfg.kappa_exponent_q;
  so.sample_points = cfg.samples.empty() ? default_strong_samples(cfg.measure.map)
                                         : cfg.samples;
  const std::size_t S = so.sample_points.size();
  const StrongRatioResult r = strong_ratio_field(cfg.measure, q, cfg.degrees, so);
  const int from = bind_from(cfg, false);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    const std::string tag = "s" + std::to_string(i % S);
    out.rows.push_back({"strong[" + tag + "]", row.n, q, row.deviation, 0.0,
                        row.deviation,
                        verdict(row.n >= from, row.converged,
                                row.deviation <= cfg.tolerance)});
    out.rows.push_back(
        {"strong[stout," + tag + "]", row.n, q, row.stout_deviation, 0.0,
         row.stout_deviation,
         verdict(cfg.stout_binding && row.n >= from, row.converged,
                 row.stout_deviation <= cfg.tolerance)});
  }
  json pts = json::array();
  for (const cd& z : so.sample_points) pts.push_back({z.real(), z.imag()});
  out.extra["samples"] = pts;
  out.extra["deflated_degree_offset"] = r.m;
}

void drive_christoffel(const RunConfig& cfg, double q, int /*threads*/,
                       RunOutput& out) {
  const int max_n = cfg.degrees.back();
  const Discretization disc = discretize(
      cfg.measure, auto_n_theta(cfg, max_n), auto_n_r(cfg, q, max_n));
  if (cfg.x0) {
    const MobiusCheck mc = mobius_invariance_check(disc, *cfg.x0, q, cfg.degrees);
    for (std::size_t i = 0; i < cfg.degrees.size(); ++i) {
      out.rows.push_back({"christoffel[x0]", cfg.degrees[i], q,
                          mc.at_x0.lambda[i], mc.at_zero_pushed.limit_estimate,
                          rel_dev(mc.at_x0.lambda[i],
                                  mc.at_zero_pushed.limit_estimate),
                          verdict(false, mc.at_x0.converged, true)});
      out.rows.push_back({"christoffel[pushed]", cfg.degrees[i], q,
                          mc.at_zero_pushed.lambda[i],
                          mc.at_x0.limit_estimate,
                          rel_dev(mc.at_zero_pushed.lambda[i],
                                  mc.at_x0.limit_estimate),
                          verdict(false, mc.at_zero_pushed.converged, true)});
    }
    const double a = mc.at_x0.limit_estimate;
    const double b = mc.at_zero_pushed.limit_estimate;
    const double gap = std::abs(a - b) / std::max({a, b, 1e-300});
    add_check(out, "plateau-agreement" + qtag(q), gap <= cfg.tolerance, gap,
              cfg.tolerance);
    out.extra["plateau_x0" + qtag(q)] = a;
    out.extra["plateau_pushed" + qtag(q)] = b;
    return;
  }
  const ChristoffelResult tr = lambda_trace(disc, cfg.z, cfg.degrees, q);
  const int from = bind_from(cfg, false);
  const double pred = cfg.target ? *cfg.target : tr.limit_estimate;
  for (std::size_t i = 0; i < cfg.degrees.size(); ++i) {
    const double dev = rel_dev(tr.lambda[i], pred);
    out.rows.push_back(
        {"christoffel", cfg.degrees[i], q, tr.lambda[i], pred, dev,
         verdict(cfg.target.has_value() && cfg.degrees[i] >= from,
                 tr.converged, std::abs(dev) <= cfg.tolerance)});
  }
  // monotonicity is definitional; a violation means quadrature failure
  double worst = 0.0;
  for (std::size_t i = 1; i < tr.lambda.size(); ++i)
    worst = std::max(worst, tr.lambda[i] - tr.lambda[i - 1]);
  const double scale = std::max(1.0, tr.lambda.front());
  add_check(out, "monotone" + qtag(q), worst <= 1e-12 * scale, worst,
            1e-12 * scale);
  out.extra["limit_estimate" + qtag(q)] = tr.limit_estimate;
  out.extra["method" + qtag(q)] = tr.method;
  if (!tr.kernel_partial.empty())
    out.extra["kernel_partial_last" + qtag(q)] = tr.kernel_partial.back();
}

void drive_faber(const RunConfig& cfg, double q, int threads,
                 RunOutput& out) {
  (void)threads;
  const FaberMomentResult r = faber_weak_limit(
      cfg.measure, q, cfg.moments, cfg.degrees, diag_options(cfg, threads));
  const int from = bind_from(cfg, false);
  for (const auto& row : r.rows) {
    const std::string tag = "k=" + std::to_string(row.k);
    const double dev = std::abs(row.value - row.limit);
    const double sdev = std::abs(row.shifted - row.limit);
    out.rows.push_back({"faber[" + tag + "]", row.n, q, std::abs(row.value),
                        std::abs(row.limit), dev,
                        verdict(row.n >= from, std::isfinite(dev),
                                dev <= cfg.tolerance)});
    out.rows.push_back({"faber[shifted," + tag + "]", row.n, q,
                        std::abs(row.shifted), std::abs(row.limit), sdev,
                        verdict(row.n >= from, std::isfinite(sdev),
                                sdev <= cfg.tolerance)});
  }
}

void drive_psiint(const RunConfig& cfg, RunOutput& out) {
  std::vector<cd> points = cfg.points;
  if (points.empty()) {
    const ExteriorMap& map = cfg.measure.map;
    points = {map.psi(cd(1.3, 0.0)), map.psi(std::polar(1.7, 0.9)),
              map.psi(std::polar(2.2, 2.1)), map.psi(std::polar(3.0, 4.0))};
  }
  const std::vector<PsiintRow> rows =
      psiint_grid(cfg.measure.map, points, cfg.radii, cfg.exponents);
  int i = 0;
  for (const auto& row : rows) {
    const double dev = row.lhs - row.rhs;
    out.rows.push_back({"psiint", i++, row.q, row.lhs, row.rhs, dev,
                        verdict(true, std::isfinite(dev),
                                std::abs(dev) <= cfg.tolerance)});
  }
}

void drive_l1demo(const RunConfig& cfg, RunOutput& out) {
  const Discretization disc = atomic_line(cfg.line_atoms);
  std::vector<double> grid(cfg.a_count);
  for (int i = 0; i < cfg.a_count; ++i)
    grid[i] = cfg.a_lo + (cfg.a_hi - cfg.a_lo) * double(i) / (cfg.a_count - 1);
  const L1ScanResult r = l1_nonuniqueness_scan(disc, cfg.l1_degree, grid);
  double flat_spread = 0.0;
  for (const auto& row : r.rows) {
    out.rows.push_back({"l1demo", cfg.l1_degree, 1.0, row.a, r.min_norm,
                        row.norm - r.min_norm, "info"});
    if (row.a >= r.flat_lo && row.a <= r.flat_hi)
      flat_spread = std::max(flat_spread, row.norm - r.min_norm);
  }
  const double width = r.flat_hi - r.flat_lo;
  add_check(out, "flat-width", width >= cfg.flat_min_width - 1e-12, width,
            cfg.flat_min_width);
  add_check(out, "flatness", flat_spread <= cfg.tolerance, flat_spread,
            cfg.tolerance);
  if (cfg.flat_value)
    add_check(out, "flat-value",
              std::abs(r.min_norm - *cfg.flat_value) <= cfg.tolerance,
              r.min_norm, *cfg.flat_value);
  out.extra["flat_range"] = {r.flat_lo, r.flat_hi};
  out.extra["flat_count"] = r.flat_count;
  out.extra["min_norm"] = r.min_norm;
  if (cfg.l1_degree == 1) {
    // two distinct minimizers, as monic coefficient vectors (low to high)
    out.extra["minimizers"] = {{-r.flat_lo, 1.0}, {-r.flat_hi, 1.0}};
  }
}

void drive_lemniscate(const RunConfig& cfg, double q, RunOutput& out) {
  const int max_n = cfg.degrees.back();
  const int nt = cfg.n_theta > 0
                     ? cfg.n_theta
                     : (std::max(512, 8 * 3 * max_n) + 63) / 64 * 64;
  const int nr = cfg.n_r > 0 ? cfg.n_r : 48;
  const LemniscateResult r = lemniscate_ratio(
      cfg.measure.radial, cfg.measure.h.value, q, cfg.degrees, nt, nr);
  const int from = bind_from(cfg, true);
  for (const auto& row : r.rows) {
    const double dev = row.ratio / r.prediction - 1.0;
    // the proved bound is one-sided: flag only overshoot
    out.rows.push_back({"lemniscate", row.n, q, row.ratio, r.prediction, dev,
                        verdict(row.n >= from,
                                row.converged && std::isfinite(dev),
                                dev <= cfg.tolerance)});
  }
  out.extra["prediction" + qtag(q)] = r.prediction;
}

void drive_moment_ratio(const RunConfig& cfg, double q, RunOutput& out) {
  const MomentRatioResult mr =
      moment_ratio_trace(cfg.measure.radial, q, cfg.degrees);
  for (const auto& r : mr.rows) {
    out.rows.push_back({"moment_ratio", r.n, q, r.ratio, 1.0, r.ratio - 1.0,
                        verdict(false, true, true)});
    out.rows.push_back({"moment_ratio[root]", r.n, q, r.root, 1.0,
                        r.root - 1.0, verdict(false, true, true)});
    out.rows.push_back({"moment_ratio[log2sq]", r.n, q, r.log2sq_scaled, 0.0,
                        r.log2sq_scaled, verdict(false, true, true)});
  }
  if (cfg.expect_one_in_support)
    add_check(out, "support-detection" + qtag(q),
              mr.one_in_support == *cfg.expect_one_in_support,
              mr.one_in_support ? 1.0 : 0.0,
              *cfg.expect_one_in_support ? 1.0 : 0.0);
  out.extra["one_in_support" + qtag(q)] = mr.one_in_support;
}

// ------------------------------------------------------------ run + files

void drive(const RunConfig& cfg, double q, int threads, RunOutput& out) {
  switch (cfg.experiment) {
    case Experiment::norm_ratio:
      return drive_norm_ratio(cfg, q, threads, out);
    case Experiment::weak_moments:
      return drive_weak_moments(cfg, q, threads, out);
    case Experiment::zeros:
      return drive_zeros(cfg, q, threads, out);
    case Experiment::strong:
      return drive_strong(cfg, q, threads, out);
    case Experiment::christoffel:
      return drive_christoffel(cfg, q, threads, out);
    case Experiment::faber:
      return drive_faber(cfg, q, threads, out);
    case Experiment::psiint:
      return drive_psiint(cfg, out);
    case Experiment::l1demo:
      return drive_l1demo(cfg, out);
    case Experiment::lemniscate:
      return drive_lemniscate(cfg, q, out);
    case Experiment::moment_ratio:
      return drive_moment_ratio(cfg, q, out);
  }
}

}  // namespace

int run_experiment(const RunConfig& cfg, const std::string& out_dir,
                   std::ostream& log) {
  const int threads = thread_count();
  std::filesystem::create_directories(out_dir);

  RunOutput out;
  const bool q_sweep = cfg.experiment != Experiment::psiint &&
                       cfg.experiment != Experiment::l1demo;
  try {
    if (q_sweep)
      for (double q : cfg.qs) drive(cfg, q, threads, out);
    else
      drive(cfg, cfg.qs.front(), threads, out);
  } catch (const std::exception& e) {
    out.errors.push_back(e.what());
  }

  const std::string name = experiment_name(cfg.experiment);
  const std::string csv_path = out_dir + "/" + name + ".csv";
  {
    std::ofstream csv(csv_path, std::ios::binary);
    csv << "experiment,n,q,value,prediction,deviation,verdict\n";
    for (const auto& r : out.rows)
      csv << r.series << ',' << r.n << ',' << fmt(r.q) << ',' << fmt(r.value)
          << ',' << fmt(r.prediction) << ',' << fmt(r.deviation) << ','
          << r.verdict << '\n';
  }

  int npass = 0, nfail = 0, ninfo = 0, nerror = 0;
  for (const auto& r : out.rows) {
    if (r.verdict == "pass") ++npass;
    else if (r.verdict == "fail") ++nfail;
    else if (r.verdict == "error") ++nerror;
    else ++ninfo;
  }
  bool checks_fail = false;
  for (const auto& c : out.checks)
    if (!c.at("pass").get<bool>()) checks_fail = true;

  int code = 0;
  if (nfail > 0 || checks_fail) code = 2;
  if (nerror > 0 || !out.errors.empty()) code = 1;

  json summary;
  summary["experiment"] = name;
  summary["config"] = json::parse(cfg.echo);
  summary["checks"] = out.checks;
  summary["extra"] = out.extra;
  summary["verdicts"] = {{"pass", npass}, {"fail", nfail}, {"info", ninfo},
                         {"error", nerror}};
  summary["errors"] = out.errors;
  summary["exit"] = code;
  {
    std::ofstream js(out_dir + "/summary.json", std::ios::binary);
    js << summary.dump(2) << '\n';
  }

  log << name << ": " << npass << " pass, " << nfail << " fail, " << ninfo
      << " info, " << nerror << " error\n";
  for (const auto& c : out.checks)
    log << "  check " << c.at("name").get<std::string>() << ": "
        << (c.at("pass").get<bool>() ? "pass" : "FAIL")
        << " (value=" << fmt(c.at("value").get<double>())
        << ", threshold=" << fmt(c.at("threshold").get<double>()) << ")\n";
  for (const auto& e : out.errors) log << "  error: " << e << "\n";
  log << "  wrote " << csv_path << "\n";
  return code;
}

namespace {

int combine_exit(int a, int b) {
  if (a == 1 || b == 1) return 1;
  return std::max(a, b);
}

std::string make_temp_dir(const std::string& stem) {
  const auto base = std::filesystem::temp_directory_path() / (stem + "-XXXXXX");
  std::string tmpl = base.string();
  if (!::mkdtemp(tmpl.data()))
    throw std::runtime_error("cannot create temporary directory " + tmpl);
  return tmpl;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"L^q-extremal monic polynomials on analytic regions: "
               "configurable experiments with pass/fail verdicts"};
  app.name("extremal-lab");

  std::string config_path, out_dir = "out", suite_name;
  CLI::App* cmd_run = app.add_subcommand("run", "execute a configured experiment");
  cmd_run->add_option("--config", config_path, "JSON experiment configuration")
      ->required();
  cmd_run->add_option("--out", out_dir, "output directory (default: ./out)");
  CLI::App* cmd_suites =
      app.add_subcommand("suites", "list the bundled experiment suites");
  CLI::App* cmd_verify = app.add_subcommand(
      "verify", "run a bundled suite and report its combined verdict");
  cmd_verify->add_option("name", suite_name, "suite name (see `suites`)")
      ->required();
  app.require_subcommand(1);

  std::vector<const char*> argv;
  argv.push_back("extremal-lab");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int c = app.exit(e, out, err);
    return c == 0 ? 0 : 1;
  }

  try {
    if (cmd_run->parsed()) {
      RunConfig cfg;
      try {
        cfg = load_config(config_path);
      } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return 1;
      }
      return run_experiment(cfg, out_dir, out);
    }
    if (cmd_suites->parsed()) {
      for (const auto& s : bundled_suites())
        out << s.name << "  (" << s.configs.size() << " config"
            << (s.configs.size() == 1 ? "" : "s") << ")\n    "
            << s.description << "\n";
      return 0;
    }
    if (cmd_verify->parsed()) {
      const Suite* s = find_suite(suite_name);
      if (!s) {
        err << "unknown suite '" << suite_name
            << "'; run `extremal-lab suites` for the list\n";
        return 1;
      }
      const std::string root = make_temp_dir("extremal-lab-" + s->name);
      int worst = 0;
      for (std::size_t i = 0; i < s->configs.size(); ++i) {
        const RunConfig cfg = parse_config(s->configs[i]);
        const std::string dir = root + "/cfg" + std::to_string(i);
        out << "[" << s->name << " " << (i + 1) << "/" << s->configs.size()
            << "] ";
        const int code = run_experiment(cfg, dir, out);
        worst = combine_exit(worst, code);
      }
      out << "suite " << s->name << ": " << (worst == 0 ? "PASS" : "FAIL")
          << " (exit " << worst << ", outputs under " << root << ")\n";
      return worst;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace xlab
