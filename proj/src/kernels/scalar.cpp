#include "xlab/kernels.hpp"

#include <cmath>

// Reference lane.  Complex arithmetic is written out on components so both
// lanes compute the same naive formulas (std::complex operator* carries an
// Annex-G NaN-recovery path the vector lane does not have).

namespace xlab::kern {
namespace {

void horner_many_scalar(const cd* coeff, std::size_t ncoeff, const cd* z,
                        std::size_t n, cd* out) {
  const cd lead = coeff[ncoeff - 1];
  for (std::size_t i = 0; i < n; ++i) {
    const double zr = z[i].real(), zi = z[i].imag();
    double ar = lead.real(), ai = lead.imag();
    for (std::size_t k = ncoeff - 1; k-- > 0;) {
      const double tr = ar * zr - ai * zi + coeff[k].real();
      const double ti = ar * zi + ai * zr + coeff[k].imag();
      ar = tr;
      ai = ti;
    }
    out[i] = cd(ar, ai);
  }
}

void cmul_many_scalar(const cd* a, const cd* b, std::size_t n, cd* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = cd(ar * br - ai * bi, ai * br + ar * bi);
  }
}

void abs2_many_scalar(const cd* a, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

cd wcdot_scalar(const double* w, const cd* a, const cd* b, std::size_t n) {
  double sr = 0.0, si = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    sr += w[i] * (ar * br + ai * bi);
    si += w[i] * (ai * br - ar * bi);
  }
  return cd(sr, si);
}

double wpow_sum_scalar(const double* w, const double* t, std::size_t n,
                       double e) {
  double s = 0.0;
  if (e == 1.0) {
    for (std::size_t i = 0; i < n; ++i) s += w[i] * t[i];
  } else if (e == 2.0) {
    for (std::size_t i = 0; i < n; ++i) s += w[i] * t[i] * t[i];
  } else if (e == 0.5) {
    for (std::size_t i = 0; i < n; ++i) s += w[i] * std::sqrt(t[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i) s += w[i] * std::pow(t[i], e);
  }
  return s;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t = {horner_many_scalar, cmul_many_scalar,
                                abs2_many_scalar,   dot_scalar,
                                wcdot_scalar,       wpow_sum_scalar};
  return t;
}

}  // namespace xlab::kern
