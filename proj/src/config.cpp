#include "xlab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace xlab {
namespace {

using json = nlohmann::json;

struct Issues {
  std::vector<std::string> list;
  void add(const std::string& field, const std::string& what) {
    list.push_back(field + ": " + what);
  }
};

const std::pair<const char*, Experiment> kExperiments[] = {
    {"norm_ratio", Experiment::norm_ratio},
    {"weak_moments", Experiment::weak_moments},
    {"zeros", Experiment::zeros},
    {"strong", Experiment::strong},
    {"christoffel", Experiment::christoffel},
    {"faber", Experiment::faber},
    {"psiint", Experiment::psiint},
    {"l1demo", Experiment::l1demo},
    {"lemniscate", Experiment::lemniscate},
    {"moment_ratio", Experiment::moment_ratio},
};

bool is_num(const json& j) { return j.is_number(); }

double get_num(const json& j, const std::string& field, double dflt,
               Issues& iss) {
  if (!j.contains(field)) return dflt;
  if (!is_num(j[field])) {
    iss.add(field, "expected a number");
    return dflt;
  }
  return j[field].get<double>();
}

int get_int(const json& j, const std::string& field, int dflt, Issues& iss) {
  if (!j.contains(field)) return dflt;
  if (!j[field].is_number_integer()) {
    iss.add(field, "expected an integer");
    return dflt;
  }
  return j[field].get<int>();
}

bool get_bool(const json& j, const std::string& field, bool dflt,
              Issues& iss) {
  if (!j.contains(field)) return dflt;
  if (!j[field].is_boolean()) {
    iss.add(field, "expected a boolean");
    return dflt;
  }
  return j[field].get<bool>();
}

// complex values are written as a plain number or an [re, im] pair
cd get_complex(const json& j, const std::string& field, Issues& iss) {
  if (is_num(j)) return cd(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && is_num(j[0]) && is_num(j[1]))
    return cd(j[0].get<double>(), j[1].get<double>());
  iss.add(field, "expected a number or an [re, im] pair");
  return cd(0.0, 0.0);
}

std::vector<double> get_num_list(const json& j, const std::string& field,
                                 std::vector<double> dflt, Issues& iss) {
  if (!j.contains(field)) return dflt;
  if (!j[field].is_array()) {
    iss.add(field, "expected an array of numbers");
    return dflt;
  }
  std::vector<double> out;
  for (const auto& v : j[field]) {
    if (!is_num(v)) {
      iss.add(field, "expected an array of numbers");
      return dflt;
    }
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<int> get_int_list(const json& j, const std::string& field,
                              Issues& iss) {
  std::vector<int> out;
  if (!j.contains(field)) return out;
  if (!j[field].is_array()) {
    iss.add(field, "expected an array of integers");
    return out;
  }
  for (const auto& v : j[field]) {
    if (!v.is_number_integer()) {
      iss.add(field, "expected an array of integers");
      return {};
    }
    out.push_back(v.get<int>());
  }
  return out;
}

// [[a, b], ...] pair lists (atom locations and masses, scan atoms, ...)
// `key` is the member to read off `j`; `label` is the fully qualified path
// used in diagnostics (the two differ inside nested parsers).
std::vector<std::pair<double, double>> get_pair_list(const json& j,
                                                     const std::string& key,
                                                     const std::string& label,
                                                     Issues& iss) {
  std::vector<std::pair<double, double>> out;
  if (!j.contains(key)) return out;
  if (!j[key].is_array()) {
    iss.add(label, "expected an array of [a, b] pairs");
    return out;
  }
  for (const auto& v : j[key]) {
    if (!v.is_array() || v.size() != 2 || !is_num(v[0]) || !is_num(v[1])) {
      iss.add(label, "expected an array of [a, b] pairs");
      return {};
    }
    out.emplace_back(v[0].get<double>(), v[1].get<double>());
  }
  return out;
}

std::vector<cd> get_complex_list(const json& j, const std::string& field,
                                 Issues& iss) {
  std::vector<cd> out;
  if (!j.contains(field)) return out;
  if (!j[field].is_array()) {
    iss.add(field, "expected an array of [re, im] pairs");
    return out;
  }
  int i = 0;
  for (const auto& v : j[field])
    out.push_back(get_complex(v, field + "[" + std::to_string(i++) + "]", iss));
  return out;
}

ExteriorMap parse_map(const json& j, Issues& iss) {
  if (!j.is_object()) {
    iss.add("measure.map", "expected an object");
    return ExteriorMap::disk();
  }
  const std::string kind = j.value("kind", "disk");
  try {
    if (kind == "disk") {
      std::optional<double> rho;
      if (j.contains("rho")) rho = get_num(j, "rho", 0.5, iss);
      return ExteriorMap::disk(rho);
    }
    if (kind == "laurent") {
      std::vector<cd> xi = get_complex_list(j, "measure.map.xi", iss);
      if (!j.contains("xi")) iss.add("measure.map.xi", "required for laurent");
      std::optional<double> rt, r;
      if (j.contains("rho_tilde")) rt = get_num(j, "rho_tilde", 0.0, iss);
      if (j.contains("rho")) r = get_num(j, "rho", 0.0, iss);
      const int trunc = get_int(j, "truncation", 256, iss);
      if (iss.list.empty()) return ExteriorMap::laurent(xi, rt, r, trunc);
      return ExteriorMap::disk();
    }
    if (kind == "power") {
      const int p = get_int(j, "p", 2, iss);
      cd c(0.0, 0.0);
      if (j.contains("c")) c = get_complex(j["c"], "measure.map.c", iss);
      std::optional<double> r;
      if (j.contains("rho")) r = get_num(j, "rho", 0.0, iss);
      const int trunc = get_int(j, "truncation", 256, iss);
      if (iss.list.empty()) return ExteriorMap::power_family(p, c, r, trunc);
      return ExteriorMap::disk();
    }
    iss.add("measure.map.kind", "unknown kind '" + kind +
                                    "' (disk | laurent | power)");
  } catch (const DomainError& e) {
    iss.add("measure.map", e.what());
  }
  return ExteriorMap::disk();
}

RadialMeasure parse_radial(const json& j, Issues& iss) {
  if (!j.is_object()) {
    iss.add("measure.radial", "expected an object");
    return RadialMeasure::delta_one();
  }
  const std::string fam = j.value("family", "delta_one");
  RadialMeasure tau = RadialMeasure::delta_one();
  try {
    if (fam == "delta_one")
      tau = RadialMeasure::delta_one();
    else if (fam == "uniform")
      tau = RadialMeasure::uniform(get_num(j, "lo", 0.0, iss));
    else if (fam == "area")
      tau = RadialMeasure::area();
    else if (fam == "one_minus_r")
      tau = RadialMeasure::one_minus_r();
    else if (fam == "power")
      tau = RadialMeasure::power(get_num(j, "alpha", 0.0, iss),
                                 get_num(j, "lo", 0.0, iss));
    else if (fam == "sparse_geometric")
      tau = RadialMeasure::sparse_geometric();
    else if (fam == "atoms")
      tau = RadialMeasure::from_atoms(get_pair_list(
          j, "atoms", "measure.radial.atoms", iss));
    else
      iss.add("measure.radial.family", "unknown family '" + fam + "'");
    if (fam != "atoms")
      for (const auto& a : get_pair_list(j, "atoms", "measure.radial.atoms", iss))
        tau.atoms.push_back(a);
  } catch (const std::exception& e) {
    iss.add("measure.radial", e.what());
  }
  return tau;
}

AngularMeasure parse_angular(const json& j, Issues& iss) {
  if (!j.is_object()) {
    iss.add("measure.angular", "expected an object");
    return AngularMeasure::uniform();
  }
  const std::string fam = j.value("family", "uniform");
  AngularMeasure nu = AngularMeasure::uniform();
  if (fam == "uniform")
    nu = AngularMeasure::uniform();
  else if (fam == "abs_linear_sq") {
    cd c(0.0, 0.0);
    if (j.contains("c"))
      c = get_complex(j["c"], "measure.angular.c", iss);
    else
      iss.add("measure.angular.c", "required for abs_linear_sq");
    if (std::abs(c) >= 1.0)
      iss.add("measure.angular.c", "needs |c| < 1");
    else
      nu = AngularMeasure::abs_linear_sq(c);
  } else if (fam == "one_plus_cos")
    nu = AngularMeasure::one_plus_cos();
  else if (fam == "two_level")
    nu = AngularMeasure::two_level(
        get_num(j, "a", 1.0, iss), get_num(j, "b", 1.0, iss),
        get_num(j, "t0", 0.0, iss), get_num(j, "t1", PI, iss));
  else
    iss.add("measure.angular.family", "unknown family '" + fam + "'");
  for (const auto& a : get_pair_list(j, "atoms", "measure.angular.atoms", iss)) {
    if (a.second <= 0.0)
      iss.add("measure.angular.atoms", "atom masses must be positive");
    nu.atoms.push_back(a);
  }
  return nu;
}

HWeight parse_h(const json& j, Issues& iss) {
  if (!j.is_object()) {
    iss.add("measure.h", "expected an object");
    return HWeight::constant();
  }
  const std::string fam = j.value("family", "constant");
  if (fam == "constant") {
    const double v = get_num(j, "value", 1.0, iss);
    if (v <= 0.0) iss.add("measure.h.value", "must be positive");
    return HWeight::constant(v > 0.0 ? v : 1.0);
  }
  if (fam == "two_level") {
    const double inner = get_num(j, "inner", 1.0, iss);
    const double outer = get_num(j, "outer", 1.0, iss);
    if (inner <= 0.0 || outer <= 0.0)
      iss.add("measure.h", "two_level values must be positive");
    return HWeight::two_level(std::max(inner, 1e-12), std::max(outer, 1e-12),
                              get_num(j, "t0", 0.0, iss),
                              get_num(j, "t1", PI, iss));
  }
  if (fam == "exp_cos") return HWeight::exp_cos(get_num(j, "eps", 0.0, iss));
  if (fam == "exp_re_cubed") {
    // exp(eps Re z^3): smooth, positive, invariant under rotation by 2pi/3
    // (the weight the cubic level-curve experiment wants)
    const double eps = get_num(j, "eps", 0.0, iss);
    HWeight h;
    h.value = [eps](cd z) { return std::exp(eps * (z * z * z).real()); };
    return h;
  }
  iss.add("measure.h.family", "unknown family '" + fam + "'");
  return HWeight::constant();
}

RegionMeasure parse_measure(const json& j, Issues& iss) {
  RegionMeasure mu;
  if (!j.is_object()) {
    iss.add("measure", "expected an object");
    return mu;
  }
  mu.map = parse_map(j.value("map", json::object()), iss);
  mu.radial = parse_radial(j.value("radial", json::object()), iss);
  mu.angular = parse_angular(j.value("angular", json::object()), iss);
  mu.h = parse_h(j.value("h", json::object()), iss);

  if (j.contains("exterior_atoms")) {
    if (!j["exterior_atoms"].is_array()) {
      iss.add("measure.exterior_atoms", "expected an array");
    } else {
      int i = 0;
      for (const auto& v : j["exterior_atoms"]) {
        const std::string field =
            "measure.exterior_atoms[" + std::to_string(i++) + "]";
        if (!v.is_array() || v.size() != 3 || !is_num(v[0]) || !is_num(v[1]) ||
            !is_num(v[2])) {
          iss.add(field, "expected [re, im, mass]");
          continue;
        }
        const double mass = v[2].get<double>();
        if (mass <= 0.0) iss.add(field, "mass must be positive");
        mu.exterior_atoms.emplace_back(
            cd(v[0].get<double>(), v[1].get<double>()), mass);
      }
    }
  }
  // boundary atoms are given by angle: the mass sits at psi(e^{i theta})
  for (const auto& [theta, mass] :
       get_pair_list(j, "boundary_atoms", "measure.boundary_atoms", iss)) {
    if (mass <= 0.0)
      iss.add("measure.boundary_atoms", "atom masses must be positive");
    mu.boundary_atoms.emplace_back(mu.map.psi(std::polar(1.0, theta)), mass);
  }
  for (const char* key : {"sigma1", "sigma2"}) {
    if (!j.contains(key)) continue;
    const std::string field = std::string("measure.") + key;
    if (!j[key].is_array()) {
      iss.add(field, "expected an array of [re, im, weight]");
      continue;
    }
    for (const auto& v : j[key]) {
      if (!v.is_array() || v.size() != 3 || !is_num(v[0]) || !is_num(v[1]) ||
          !is_num(v[2])) {
        iss.add(field, "expected an array of [re, im, weight]");
        break;
      }
      auto& dst = std::string(key) == "sigma1" ? mu.sigma1 : mu.sigma2;
      dst.emplace_back(cd(v[0].get<double>(), v[1].get<double>()),
                       v[2].get<double>());
    }
  }
  return mu;
}

}  // namespace

const char* experiment_name(Experiment e) {
  for (const auto& [name, val] : kExperiments)
    if (val == e) return name;
  return "unknown";
}

double default_tolerance(Experiment e) {
  switch (e) {
    case Experiment::strong:
      return 0.02;
    case Experiment::psiint:
      return 1e-8;
    case Experiment::l1demo:
      return 1e-10;
    default:
      return 0.05;
  }
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("not valid JSON: ") + e.what()});
  }
  if (!j.is_object()) throw ConfigError({"top level: expected an object"});

  Issues iss;
  RunConfig cfg;

  // experiment selector
  if (!j.contains("experiment") || !j["experiment"].is_string()) {
    iss.add("experiment", "required string");
  } else {
    const std::string name = j["experiment"].get<std::string>();
    bool known = false;
    for (const auto& [n, e] : kExperiments)
      if (name == n) {
        cfg.experiment = e;
        known = true;
      }
    if (!known)
      iss.add("experiment",
              "unknown experiment '" + name +
                  "' (norm_ratio | weak_moments | zeros | strong | "
                  "christoffel | faber | psiint | l1demo | lemniscate | "
                  "moment_ratio)");
  }

  // q: single value or a sweep
  if (j.contains("q")) {
    if (is_num(j["q"]))
      cfg.qs = {j["q"].get<double>()};
    else
      cfg.qs = get_num_list(j, "q", {2.0}, iss);
  }
  if (cfg.qs.empty()) iss.add("q", "needs at least one value");
  for (double q : cfg.qs)
    if (!(q > 0.0)) iss.add("q", "values must be positive");

  cfg.degrees = get_int_list(j, "degrees", iss);
  {
    int prev = 0;
    for (int n : cfg.degrees) {
      if (n <= prev) {
        iss.add("degrees", "must be positive and strictly increasing");
        break;
      }
      prev = n;
    }
  }
  const bool needs_degrees = cfg.experiment != Experiment::psiint &&
                             cfg.experiment != Experiment::l1demo;
  if (needs_degrees && cfg.degrees.empty())
    iss.add("degrees", "required non-empty array");

  if (j.contains("moments")) {
    cfg.moments = get_int_list(j, "moments", iss);
    if (cfg.moments.empty()) iss.add("moments", "needs at least one index");
    for (int k : cfg.moments)
      if (k < 0) iss.add("moments", "indices must be >= 0");
  }

  const bool needs_measure = cfg.experiment != Experiment::l1demo;
  if (j.contains("measure"))
    cfg.measure = parse_measure(j["measure"], iss);
  else if (needs_measure && cfg.experiment != Experiment::psiint)
    iss.add("measure", "required object");
  // psiint only reads the map, but falling back to the default disk would
  // let a config quietly verify the wrong region, so it must be spelled out
  if (cfg.experiment == Experiment::psiint &&
      !(j.contains("measure") && j["measure"].is_object() &&
        j["measure"].contains("map")))
    iss.add("measure.map", "psiint requires an explicit map");

  if (j.contains("resolution")) {
    const json& r = j["resolution"];
    if (!r.is_object()) {
      iss.add("resolution", "expected an object");
    } else {
      cfg.n_theta = get_int(r, "n_theta", 0, iss);
      cfg.n_r = get_int(r, "n_r", 0, iss);
      if (cfg.n_theta < 0) iss.add("resolution.n_theta", "must be >= 0");
      if (cfg.n_r < 0) iss.add("resolution.n_r", "must be >= 0");
    }
  }

  cfg.tolerance = get_num(j, "tolerance", 0.0, iss);
  if (j.contains("tolerance") && !(cfg.tolerance > 0.0))
    iss.add("tolerance", "must be positive");
  if (cfg.tolerance <= 0.0) cfg.tolerance = default_tolerance(cfg.experiment);
  cfg.check_from = get_int(j, "check_from", -1, iss);

  const json opt = j.value("options", json::object());
  if (!opt.is_object()) {
    iss.add("options", "expected an object");
  } else {
    cfg.r_compact = get_num(opt, "r_compact", 0.9, iss);
    if (!(cfg.r_compact > 0.0 && cfg.r_compact < 1.0))
      iss.add("options.r_compact", "needs 0 < r_compact < 1");
    cfg.delta = get_num(opt, "delta", 0.0, iss);
    if (cfg.delta < 0.0) iss.add("options.delta", "must be >= 0");
    cfg.slope_max = get_num(opt, "slope_max", -0.2, iss);
    cfg.stable_from = get_int(opt, "stable_from", 10, iss);
    cfg.kappa_exponent_q = get_bool(opt, "kappa_exponent_q", false, iss);
    cfg.stout_binding = get_bool(opt, "stout_binding", false, iss);
    cfg.samples = get_complex_list(opt, "samples", iss);
    if (opt.contains("z")) cfg.z = get_complex(opt["z"], "options.z", iss);
    if (opt.contains("x0")) cfg.x0 = get_complex(opt["x0"], "options.x0", iss);
    if (opt.contains("target")) {
      cfg.target = get_num(opt, "target", 0.0, iss);
      if (!(*cfg.target > 0.0)) iss.add("options.target", "must be positive");
    }
    cfg.points = get_complex_list(opt, "points", iss);
    cfg.radii = get_num_list(opt, "radii", cfg.radii, iss);
    for (double r : cfg.radii)
      if (!(r > 0.0)) iss.add("options.radii", "must be positive");
    cfg.exponents = get_num_list(opt, "exponents", cfg.exponents, iss);
    for (double e : cfg.exponents)
      if (!(e > 0.0)) iss.add("options.exponents", "must be positive");
    if (opt.contains("line_atoms")) {
      cfg.line_atoms = get_pair_list(opt, "line_atoms", "options.line_atoms", iss);
      if (cfg.line_atoms.empty())
        iss.add("options.line_atoms", "needs at least one atom");
    }
    cfg.l1_degree = get_int(opt, "degree", 1, iss);
    if (cfg.l1_degree < 1 || cfg.l1_degree % 2 == 0)
      iss.add("options.degree", "must be odd and >= 1");
    if (opt.contains("a")) {
      const json& a = opt["a"];
      if (!a.is_object()) {
        iss.add("options.a", "expected {lo, hi, count}");
      } else {
        cfg.a_lo = get_num(a, "lo", -1.5, iss);
        cfg.a_hi = get_num(a, "hi", 1.5, iss);
        cfg.a_count = get_int(a, "count", 121, iss);
        if (!(cfg.a_lo < cfg.a_hi)) iss.add("options.a", "needs lo < hi");
        if (cfg.a_count < 2) iss.add("options.a.count", "needs >= 2");
      }
    }
    cfg.flat_min_width = get_num(opt, "flat_min_width", 0.5, iss);
    if (opt.contains("flat_value"))
      cfg.flat_value = get_num(opt, "flat_value", 0.0, iss);
    if (opt.contains("expect_one_in_support"))
      cfg.expect_one_in_support =
          get_bool(opt, "expect_one_in_support", false, iss);
  }

  if (!iss.list.empty()) throw ConfigError(std::move(iss.list));
  cfg.echo = j.dump(2);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"cannot open config file: " + path});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

int thread_count() {
  const char* env = std::getenv("EXTREMAL_LAB_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (!end || *end != '\0' || v < 1 || v > 256)
    throw ConfigError(
        {"EXTREMAL_LAB_THREADS: expected an integer in [1, 256], got '" +
         std::string(env) + "'"});
  return int(v);
}

}  // namespace xlab
