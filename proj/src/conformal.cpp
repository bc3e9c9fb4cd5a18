#include "xlab/conformal.hpp"

#include <algorithm>
#include <cmath>

#include "xlab/kernels.hpp"
#include "xlab/roots.hpp"

namespace xlab {
namespace {

// Truncated series at infinity: f(z) = sum_i c[i] z^(lead - i).  Every series
// carries the same number of terms; products just drop what falls off the end.
struct Ser {
  int lead = 0;
  std::vector<cd> c;
};

Ser mul(const Ser& a, const Ser& b, std::size_t m) {
  Ser h;
  h.lead = a.lead + b.lead;
  h.c.assign(m, cd(0.0));
  const std::size_t na = std::min(a.c.size(), m), nb = std::min(b.c.size(), m);
  for (std::size_t i = 0; i < na; ++i) {
    if (a.c[i] == cd(0.0)) continue;
    const std::size_t jmax = std::min(nb, m - i);
    for (std::size_t j = 0; j < jmax; ++j) h.c[i + j] += a.c[i] * b.c[j];
  }
  return h;
}

// 1/f, requires c[0] != 0
Ser recip(const Ser& f, std::size_t m) {
  Ser g;
  g.lead = -f.lead;
  g.c.assign(m, cd(0.0));
  g.c[0] = 1.0 / f.c[0];
  for (std::size_t k = 1; k < m; ++k) {
    cd s(0.0);
    const std::size_t imax = std::min(k, f.c.size() - 1);
    for (std::size_t i = 1; i <= imax; ++i) s += f.c[i] * g.c[k - i];
    g.c[k] = -s / f.c[0];
  }
  return g;
}

// a + b, aligning leads
Ser add(const Ser& a, const Ser& b, std::size_t m) {
  Ser h;
  h.lead = std::max(a.lead, b.lead);
  h.c.assign(m, cd(0.0));
  const int da = h.lead - a.lead, db = h.lead - b.lead;
  for (std::size_t i = 0; i < a.c.size() && i + da < m; ++i)
    h.c[i + da] += a.c[i];
  for (std::size_t i = 0; i < b.c.size() && i + db < m; ++i)
    h.c[i + db] += b.c[i];
  return h;
}

Ser scale(Ser f, cd s) {
  for (auto& x : f.c) x *= s;
  return f;
}

Ser pow_n(const Ser& f, int n, std::size_t m) {
  Ser acc;
  acc.lead = 0;
  acc.c.assign(m, cd(0.0));
  acc.c[0] = 1.0;
  Ser base = f;
  int e = n;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base, m);
    e >>= 1;
    if (e) base = mul(base, base, m);
  }
  return acc;
}

// psi without the domain guard, for Newton iterates that wander slightly
// below rho before being pulled back
cd psi_unguarded(const ExteriorMap& m, cd w) {
  if (m.kind() == ExteriorMap::Kind::laurent) {
    const auto& xi = m.laurent_coeffs();
    cd s = w + xi[0];
    cd wink = 1.0 / w;
    cd pw = wink;
    for (std::size_t k = 1; k < xi.size(); ++k) {
      s += xi[k] * pw;
      pw *= wink;
    }
    return s;
  }
  return m.psi(w);
}

}  // namespace

cd FaberPolynomial::eval(cd z) const {
  cd out;
  kern::horner_many(coeff.data(), coeff.size(), &z, 1, &out);
  return out;
}

// ------------------------------------------------------------- constructors

ExteriorMap ExteriorMap::disk(std::optional<double> rho) {
  ExteriorMap m;
  m.kind_ = Kind::disk;
  m.rho_tilde_ = 0.0;
  m.rho_ = rho.value_or(0.5);
  if (!(m.rho_ > 0.0 && m.rho_ < 1.0))
    throw DomainError("disk map: rho must lie in (0,1)");
  return m;
}

ExteriorMap ExteriorMap::laurent(std::vector<cd> xi,
                                 std::optional<double> rho_tilde,
                                 std::optional<double> rho,
                                 int truncation_order) {
  ExteriorMap m;
  m.kind_ = Kind::laurent;
  m.xi_ = std::move(xi);
  if (m.xi_.empty()) m.xi_.push_back(cd(0.0));
  m.trunc_ = std::max(truncation_order, 32);

  if (rho_tilde) {
    m.rho_tilde_ = *rho_tilde;
  } else {
    // largest critical point of psi': roots of w^(K+1) - sum k xi_k w^(K-k)
    const int K = (int)m.xi_.size() - 1;
    double worst = 0.0;
    if (K >= 1) {
      std::vector<cd> p(K + 2, cd(0.0));
      p[K + 1] = 1.0;
      for (int k = 1; k <= K; ++k) p[K - k] = -double(k) * m.xi_[k];
      bool nontrivial = false;
      for (int k = 0; k <= K; ++k)
        if (p[k] != cd(0.0)) nontrivial = true;
      if (nontrivial) {
        const RootResult rr = poly_roots(p);
        for (const cd& r : rr.roots) worst = std::max(worst, std::abs(r));
      }
    }
    m.rho_tilde_ = std::max(worst, 1e-9);
  }
  if (m.rho_tilde_ >= 1.0)
    throw DomainError(
        "laurent map: psi' has a critical point with modulus >= 1; no "
        "univalent annulus");
  m.rho_ = rho.value_or(0.5 * (m.rho_tilde_ + 1.0));
  if (!(m.rho_ > m.rho_tilde_ && m.rho_ < 1.0))
    throw DomainError("laurent map: need rho_tilde < rho < 1");
  m.validate_laurent_univalence();
  return m;
}

ExteriorMap ExteriorMap::power_family(int p, cd c, std::optional<double> rho,
                                      int truncation_order) {
  ExteriorMap m;
  m.kind_ = Kind::power_family;
  if (p < 2) throw DomainError("power_family: p must be >= 2");
  if (std::abs(c) > 1.0 + 1e-14)
    throw DomainError("power_family: |c| > 1 gives a disconnected region");
  m.power_p_ = p;
  m.power_c_ = c;
  m.trunc_ = std::max(truncation_order, 32);
  m.rho_tilde_ = std::pow(std::abs(c), 1.0 / p);
  if (m.rho_tilde_ >= 1.0 - 1e-12) {
    if (rho) throw DomainError("power_family: no rho < 1 annulus for |c| = 1");
    m.rho_ = 1.0;  // boundary-only map; has_annulus() == false
  } else {
    m.rho_ = rho.value_or(0.5 * (m.rho_tilde_ + 1.0));
    if (!(m.rho_ > m.rho_tilde_ && m.rho_ < 1.0))
      throw DomainError("power_family: need rho_tilde < rho < 1");
  }
  return m;
}

void ExteriorMap::validate_laurent_univalence() const {
  // sample a handful of circles and insist distinct points have distinct
  // images; also keep psi' away from zero on |w| = rho
  const double radii[] = {rho_, 0.5 * (rho_ + 1.0), 1.0, 1.5, 3.0};
  std::vector<cd> pts, img;
  for (double r : radii)
    for (int j = 0; j < 48; ++j) {
      const double t = TWO_PI * (j + 0.31) / 48;
      pts.push_back(r * cd(std::cos(t), std::sin(t)));
    }
  img.reserve(pts.size());
  double scale = 1.0;
  for (const cd& w : pts) {
    img.push_back(psi(w));
    scale = std::max(scale, std::abs(img.back()));
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (std::abs(pts[i] - pts[j]) < 1e-6) continue;
      if (std::abs(img[i] - img[j]) < 1e-9 * scale)
        throw DomainError(
            "laurent map: psi is not injective on the sampled annulus");
    }
  for (int j = 0; j < 97; ++j) {
    const double t = TWO_PI * j / 97;
    if (std::abs(psi_prime(rho_ * cd(std::cos(t), std::sin(t)))) < 1e-10)
      throw DomainError("laurent map: psi' vanishes on |w| = rho");
  }
}

// ------------------------------------------------------------- evaluation

cd ExteriorMap::psi(cd w) const {
  const double aw = std::abs(w);
  switch (kind_) {
    case Kind::disk:
      return w;  // entire; no annulus restriction applies
    case Kind::laurent: {
      if (aw < rho_ * (1.0 - 1e-12))
        throw DomainError("psi: |w| below the working annulus");
      cd s = w + xi_[0];
      cd wink = 1.0 / w;
      cd pw = wink;
      for (std::size_t k = 1; k < xi_.size(); ++k) {
        s += xi_[k] * pw;
        pw *= wink;
      }
      return s;
    }
    case Kind::power_family: {
      if (std::pow(aw, power_p_) < std::abs(power_c_) * (1.0 - 1e-12))
        throw DomainError("psi: |w|^p below |c|");
      // w (1 + c w^-p)^(1/p), principal branch; the argument stays off the
      // negative real axis on the admissible domain
      cd wp = std::pow(w, -power_p_);
      cd u = power_c_ * wp;
      return w * std::exp(std::log(cd(1.0) + u) / double(power_p_));
    }
  }
  return w;
}

cd ExteriorMap::psi_prime(cd w) const {
  switch (kind_) {
    case Kind::disk:
      return cd(1.0);
    case Kind::laurent: {
      cd s(1.0);
      cd wink = 1.0 / w;
      cd pw = wink * wink;
      for (std::size_t k = 1; k < xi_.size(); ++k) {
        s -= double(k) * xi_[k] * pw;
        pw *= wink;
      }
      return s;
    }
    case Kind::power_family: {
      const cd ps = psi(w);
      if (std::abs(ps) == 0.0)
        throw DomainError("psi_prime: derivative blows up at a branch point");
      cd t = w / ps, out(1.0);
      for (int i = 0; i < power_p_ - 1; ++i) out *= t;
      return out;
    }
  }
  return cd(1.0);
}

cd ExteriorMap::phi(cd z) const {
  switch (kind_) {
    case Kind::disk:
      // the identity extends to the whole plane; no annulus restriction
      return z;
    case Kind::power_family: {
      if (std::abs(z) == 0.0) {
        // boundary branch point of the degenerate family; any p-th root has
        // the right modulus
        return std::exp(std::log(-power_c_) / double(power_p_));
      }
      const cd u = power_c_ * std::pow(z, -power_p_);
      const cd f = z * std::exp(std::log(cd(1.0) - u) / double(power_p_));
      if (std::abs(f) < rho_ * (1.0 - 1e-9))
        throw DomainError("phi: point inside the rho-level curve");
      return f;
    }
    case Kind::laurent:
      break;
  }

  // damped Newton, with modulus continuation if the direct solve stalls
  const auto solve_stage = [&](cd target, cd w0, cd* out) -> bool {
    cd w = w0;
    double res = std::abs(psi_unguarded(*this, w) - target);
    const double tol = 1e-12 * std::max(1.0, std::abs(target));
    for (int it = 0; it < 100; ++it) {
      if (res <= tol) {
        *out = w;
        return true;
      }
      const cd dp = psi_prime(w);
      if (std::abs(dp) < 1e-14) return false;
      const cd full = (psi_unguarded(*this, w) - target) / dp;
      double lam = 1.0;
      bool improved = false;
      for (int bt = 0; bt < 24; ++bt, lam *= 0.5) {
        const cd wn = w - lam * full;
        const double rn = std::abs(psi_unguarded(*this, wn) - target);
        if (rn < res * (1.0 - 0.25 * lam)) {
          w = wn;
          res = rn;
          improved = true;
          break;
        }
      }
      if (!improved) return false;
    }
    *out = w;
    return res <= tol;
  };

  cd w;
  if (solve_stage(z, z, &w)) {
    if (std::abs(w) < rho_ * (1.0 - 1e-9))
      throw DomainError("phi: point inside the rho-level curve");
    return w;
  }
  // continuation from larger modulus
  static const double ladder[] = {8.0, 4.0, 2.0, 1.5, 1.2, 1.05, 1.0};
  cd guess = z * ladder[0];
  double last_res = std::abs(z);
  for (double f : ladder) {
    const cd target = z * f;
    if (!solve_stage(target, guess, &guess)) {
      // a stall with the iterate sunk well below |w| = 1 means the target
      // curve has dived inside the region: slit-shaped interiors (critical
      // circle mapping onto a segment) trap the Newton path exactly this
      // way, leaving no admissible preimage.  That is a statement about the
      // point, not about the solver.
      if (std::abs(guess) < 0.5 * (rho_ + 1.0))
        throw DomainError("phi: point inside the rho-level curve");
      last_res = std::abs(psi_unguarded(*this, guess) - target);
      throw ConvergenceError("phi: Newton continuation stalled", 100, last_res);
    }
  }
  if (std::abs(guess) < rho_ * (1.0 - 1e-9))
    throw DomainError("phi: point inside the rho-level curve");
  return guess;
}

double ExteriorMap::green(cd z) const {
  const double g = std::log(std::abs(phi(z)));
  if (g < -1e-9) throw DomainError("green: point is inside the region");
  return std::max(g, 0.0);
}

// ------------------------------------------------------------- Faber

const std::vector<cd>& ExteriorMap::phi_series() const {
  if (phi_series_cache_) return *phi_series_cache_;
  const std::size_t m = (std::size_t)trunc_ + 8;
  Ser phi_s;
  phi_s.lead = 1;
  phi_s.c.assign(m, cd(0.0));
  phi_s.c[0] = 1.0;

  if (kind_ == Kind::power_family && power_p_ > 0) {
    // phi(z) = z (1 - c z^-p)^(1/p): binomial coefficients, exact
    const double alpha = 1.0 / power_p_;
    cd term(1.0);
    for (int j = 0; (std::size_t)(j * power_p_) < m; ++j) {
      if (j > 0) term *= (-power_c_) * ((alpha - (j - 1)) / double(j));
      phi_s.c[(std::size_t)j * power_p_] = term;
    }
  } else if (kind_ == Kind::laurent) {
    // Newton series inversion of psi; accuracy doubles per pass
    phi_s.c[1] = -xi_[0];
    const int passes = 3 + (int)std::ceil(std::log2((double)m));
    for (int pass = 0; pass < passes; ++pass) {
      const Ser inv = recip(phi_s, m);
      // psi(phi) - z  =  xi0 + sum_k xi_k inv^k  + (phi - z)
      Ser diff = phi_s;
      diff.c[0] = 0.0;           // subtract z
      diff.c[1] += xi_[0];       // add xi0
      Ser pw = inv;
      for (std::size_t k = 1; k < xi_.size(); ++k) {
        diff = add(diff, scale(pw, xi_[k]), m);
        if (k + 1 < xi_.size()) pw = mul(pw, inv, m);
      }
      // psi'(phi) = 1 - sum_k k xi_k inv^(k+1)
      Ser dpsi;
      dpsi.lead = 0;
      dpsi.c.assign(m, cd(0.0));
      dpsi.c[0] = 1.0;
      Ser pw2 = mul(inv, inv, m);
      for (std::size_t k = 1; k < xi_.size(); ++k) {
        dpsi = add(dpsi, scale(pw2, -double(k) * xi_[k]), m);
        if (k + 1 < xi_.size()) pw2 = mul(pw2, inv, m);
      }
      const Ser upd = mul(diff, recip(dpsi, m), m);
      phi_s = add(phi_s, scale(upd, cd(-1.0)), m);
      phi_s.lead = 1;  // add() keeps the max lead; the top coeff stays 1
      phi_s.c[0] = 1.0;
      phi_s.c.resize(m, cd(0.0));
    }
  }
  phi_series_cache_ = std::make_shared<std::vector<cd>>(std::move(phi_s.c));
  return *phi_series_cache_;
}

FaberPolynomial ExteriorMap::faber(int n) const {
  if (n < 0) throw DomainError("faber: degree must be >= 0");
  FaberPolynomial f;
  f.n = n;
  f.coeff.assign((std::size_t)n + 1, cd(0.0));
  if (kind_ == Kind::disk) {
    f.coeff[n] = 1.0;
    return f;
  }
  if (n + 8 > trunc_)
    throw DomainError("faber: truncation_order must exceed the degree by 8");

  const std::vector<cd>& base = phi_series();
  const std::size_t m = base.size();
  Ser phi_s;
  phi_s.lead = 1;
  phi_s.c = base;
  const Ser s = (n == 0) ? Ser{0, std::vector<cd>(m, cd(0.0))}
                         : pow_n(phi_s, n, m);
  if (n == 0) {
    f.coeff[0] = 1.0;
    return f;
  }
  for (int j = 0; j <= n; ++j) f.coeff[j] = s.c[(std::size_t)(n - j)];
  if (std::abs(f.coeff[n] - 1.0) > 1e-12)
    throw ConvergenceError("faber: series leading coefficient drifted", 0,
                           std::abs(f.coeff[n] - 1.0));
  f.coeff[n] = 1.0;  // monic by construction

  double maxc = 0.0;
  for (const cd& c : s.c) maxc = std::max(maxc, std::abs(c));
  for (std::size_t i = m - 4; i < m; ++i)
    if (std::abs(s.c[i]) > 1e-10 * std::max(1.0, maxc))
      f.truncation_suspect = true;
  return f;
}

std::vector<cd> ExteriorMap::equilibrium_moments(int k_max,
                                                 int quad_points) const {
  if (k_max < 1) throw DomainError("equilibrium_moments: k_max must be >= 1");
  if (quad_points < 4 * k_max)
    throw DomainError("equilibrium_moments: need quad_points >= 4 k_max");
  std::vector<cd> vals(quad_points);
  for (int j = 0; j < quad_points; ++j) {
    const double t = TWO_PI * (j + 0.5) / quad_points;
    vals[j] = phi(psi(cd(std::cos(t), std::sin(t))));
  }
  std::vector<cd> m((std::size_t)k_max, cd(0.0));
  std::vector<cd> pw = vals;
  for (int k = 1; k <= k_max; ++k) {
    cd s(0.0);
    for (const cd& v : pw) s += v;
    m[k - 1] = s / double(quad_points);
    if (k < k_max) kern::cmul_many(pw.data(), vals.data(), pw.size(), pw.data());
  }
  return m;
}

}  // namespace xlab
