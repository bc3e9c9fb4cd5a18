#include "xlab/suites.hpp"

namespace xlab {
namespace {

// The configs are plain documents on purpose: `verify` exercises the same
// parse path as `run --config`, and anything listed here can be copied out
// and edited as a starting point.

const char* kExactCircle = R"json({
  "experiment": "norm_ratio",
  "q": [1, 2, 4],
  "degrees": [1, 2, 3, 5, 8, 13, 21, 34, 50],
  "check_from": 1,
  "tolerance": 1e-10,
  "measure": {
    "map": {"kind": "disk"},
    "radial": {"family": "delta_one"},
    "angular": {"family": "uniform"}
  }
})json";

const char* kExactArea = R"json({
  "experiment": "norm_ratio",
  "q": [1, 2, 4],
  "degrees": [1, 2, 3, 5, 8, 13, 21, 34, 50],
  "check_from": 1,
  "tolerance": 1e-10,
  "measure": {
    "map": {"kind": "disk"},
    "radial": {"family": "area"},
    "angular": {"family": "uniform"}
  }
})json";

const char* kBigoneAtomCircle = R"json({
  "experiment": "norm_ratio",
  "q": 2,
  "degrees": [4, 8, 12, 16, 20, 24, 28, 32, 36, 40],
  "tolerance": 0.05,
  "measure": {
    "map": {"kind": "disk"},
    "radial": {"family": "delta_one"},
    "angular": {"family": "uniform"},
    "exterior_atoms": [[2, 0, 0.5]]
  }
})json";

const char* kBigoneAtomArea = R"json({
  "experiment": "norm_ratio",
  "q": 2,
  "degrees": [4, 8, 12, 16, 20, 24, 28, 32, 36, 40],
  "tolerance": 0.08,
  "measure": {
    "map": {"kind": "disk"},
    "radial": {"family": "area"},
    "angular": {"family": "uniform"},
    "exterior_atoms": [[2, 0, 0.5]]
  }
})json";

const char* kPsiintDisk = R"json({
  "experiment": "psiint",
  "tolerance": 1e-8,
  "measure": {"map": {"kind": "disk"}},
  "options": {"radii": [0.6, 0.8, 1.0], "exponents": [1, 2]}
})json";

const char* kPsiintLaurent = R"json({
  "experiment": "psiint",
  "tolerance": 1e-8,
  "measure": {"map": {"kind": "laurent", "xi": [[0.2, 0]]}},
  "options": {"radii": [0.8, 0.9, 1.0], "exponents": [1, 2]}
})json";

const char* kPsiintPower = R"json({
  "experiment": "psiint",
  "tolerance": 1e-8,
  "measure": {"map": {"kind": "power", "p": 3, "c": [0.5, 0]}},
  "options": {"radii": [0.92, 0.96, 1.0], "exponents": [1, 2]}
})json";

const char* kZerosAtomBall = R"json({
  "experiment": "zeros",
  "q": 2,
  "degrees": [2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18,
              19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31, 32, 33,
              34, 35, 36, 37, 38, 39, 40],
  "measure": {
    "map": {"kind": "disk"},
    "radial": {"family": "delta_one"},
    "angular": {"family": "uniform"},
    "exterior_atoms": [[2, 0, 0.5]]
  },
  "options": {"slope_max": -0.2, "stable_from": 10}
})json";

const char* kWeakMomentsAtom = R"json({
  "experiment": "weak_moments",
  "q": 2,
  "moments": [1, 2, 3, 4],
  "degrees": [5, 10, 15, 20, 25, 30, 35, 40],
  "tolerance": 0.05,
  "measure": {
    "map": {"kind": "disk"},
    "radial": {"family": "delta_one"},
    "angular": {"family": "uniform"},
    "exterior_atoms": [[2, 0, 0.5]],
    "sigma1": [[0.25, 0.1, 0.3]]
  }
})json";

const char* kStrongAtom = R"json({
  "experiment": "strong",
  "q": 2,
  "degrees": [5, 10, 15, 20, 25, 30, 35, 40],
  "tolerance": 0.02,
  "measure": {
    "map": {"kind": "disk"},
    "radial": {"family": "delta_one"},
    "angular": {"family": "uniform"},
    "exterior_atoms": [[2, 0, 0.5]]
  }
})json";

const char* kStrongBernstein = R"json({
  "experiment": "strong",
  "q": 2,
  "degrees": [5, 10, 15, 20, 25, 30, 35, 40],
  "tolerance": 0.02,
  "measure": {
    "map": {"kind": "disk"},
    "radial": {"family": "delta_one"},
    "angular": {"family": "abs_linear_sq", "c": [0.5, 0]}
  }
})json";

const char* kChristoffelBoundaryAtom = R"json({
  "experiment": "christoffel",
  "q": 2,
  "degrees": [5, 10, 15, 20, 25, 30, 35, 40],
  "tolerance": 0.05,
  "measure": {
    "map": {"kind": "disk"},
    "radial": {"family": "delta_one"},
    "angular": {"family": "uniform"},
    "boundary_atoms": [[0, 1.0]]
  },
  "options": {"z": [1, 0], "target": 1.0}
})json";

const char* kChristoffelMobius = R"json({
  "experiment": "christoffel",
  "q": 2,
  "degrees": [5, 10, 15, 20, 25, 30, 35, 40],
  "tolerance": 0.05,
  "measure": {
    "map": {"kind": "disk"},
    "radial": {"family": "area"},
    "angular": {"family": "uniform"}
  },
  "options": {"x0": [0.5, 0]}
})json";

const char* kL1Demo = R"json({
  "experiment": "l1demo",
  "tolerance": 1e-10,
  "options": {
    "line_atoms": [[-1.5, 0.5], [1.5, 0.5]],
    "degree": 1,
    "a": {"lo": -1.5, "hi": 1.5, "count": 121},
    "flat_min_width": 2.99,
    "flat_value": 1.5
  }
})json";

const char* kFaberMoments = R"json({
  "experiment": "faber",
  "q": 2,
  "moments": [1, 2],
  "degrees": [10, 20, 30, 40],
  "tolerance": 0.05,
  "measure": {
    "map": {"kind": "disk"},
    "radial": {"family": "uniform", "lo": 0.5},
    "angular": {"family": "abs_linear_sq", "c": [0.4, 0]}
  }
})json";

const char* kMomentArea = R"json({
  "experiment": "moment_ratio",
  "q": 2,
  "degrees": [16, 64, 256, 1024, 4096, 16384],
  "measure": {"radial": {"family": "area"}},
  "options": {"expect_one_in_support": true}
})json";

const char* kMomentInnerAtom = R"json({
  "experiment": "moment_ratio",
  "q": 2,
  "degrees": [16, 64, 256, 1024, 4096, 16384],
  "measure": {"radial": {"family": "atoms", "atoms": [[0.5, 1.0]]}},
  "options": {"expect_one_in_support": false}
})json";

const char* kMomentSparse = R"json({
  "experiment": "moment_ratio",
  "q": 2,
  "degrees": [16, 64, 256, 1024, 4096, 16384],
  "measure": {"radial": {"family": "sparse_geometric"}},
  "options": {"expect_one_in_support": true}
})json";

const char* kLemniscate = R"json({
  "experiment": "lemniscate",
  "q": 2,
  "degrees": [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12],
  "tolerance": 0.05,
  "measure": {
    "radial": {"family": "atoms", "atoms": [[0.7, 0.5], [0.9, 0.5]]},
    "h": {"family": "exp_re_cubed", "eps": 0.3}
  }
})json";

std::vector<Suite> build() {
  return {
      {"exact-symmetric-circle",
       "uniform circle measure: z^n stays extremal and every norm ratio is 1",
       {kExactCircle}},
      {"exact-symmetric-area",
       "uniform area measure: the same rotation-invariance pin at full "
       "precision",
       {kExactArea}},
      {"theorem-bigone-atom",
       "an exterior point mass multiplies the norm-ratio limit by "
       "|phi(atom)|^q",
       {kBigoneAtomCircle, kBigoneAtomArea}},
      {"psiint-grid",
       "circular means of log|psi - x| reproduce the Green function on "
       "three maps",
       {kPsiintDisk, kPsiintLaurent, kPsiintPower}},
      {"zeros-atom-ball",
       "exactly one zero per exterior atom, attracted at a geometric rate",
       {kZerosAtomBall}},
      {"weak-moments-atom",
       "normalized extremal densities settle on the boundary equilibrium "
       "measure",
       {kWeakMomentsAtom}},
      {"strong-asymptotics",
       "pointwise exterior convergence against the Szego comparison "
       "function",
       {kStrongAtom, kStrongBernstein}},
      {"christoffel-limits",
       "boundary point mass recovered by lambda_n; disk-automorphism "
       "invariance of the interior limit",
       {kChristoffelBoundaryAtom, kChristoffelMobius}},
      {"appendix-l1-nonuniqueness",
       "symmetric two-atom measure: the degree-1 L1 problem has a segment "
       "of minimizers",
       {kL1Demo}},
      {"faber-weak-moments",
       "weighted polynomial moments keep their boundary limit under index "
       "shifts",
       {kFaberMoments}},
      {"lemniscate-upper-bound",
       "cubic level-curve measure obeys the geometric-mean upper bound",
       {kLemniscate}},
      {"moment-ratio-support",
       "consecutive radial moment ratios detect whether the outer radius "
       "carries mass (no polynomial solves)",
       {kMomentArea, kMomentInnerAtom, kMomentSparse}},
  };
}

}  // namespace

const std::vector<Suite>& bundled_suites() {
  static const std::vector<Suite> suites = build();
  return suites;
}

const Suite* find_suite(const std::string& name) {
  for (const auto& s : bundled_suites())
    if (s.name == name) return &s;
  return nullptr;
}

}  // namespace xlab
