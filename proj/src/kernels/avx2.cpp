#include "xlab/kernels.hpp"

#if defined(XLAB_BUILD_AVX2) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>

// AVX2+FMA lane.  Complex doubles are kept interleaved (re,im) so one __m256d
// holds two values.  Multiply recipe: with br = dup(b.re), bi = dup(b.im),
// asw = swap(a), fmaddsub(a, br, asw*bi) yields (a.re*b.re - a.im*b.im,
// a.im*b.re + a.re*b.im) because fmaddsub subtracts in even lanes and adds in
// odd ones; fmsubadd gives the conjugated product the same way.

namespace xlab::kern {
namespace {

inline __m256d cmul2(__m256d a, __m256d b) {
  const __m256d br = _mm256_movedup_pd(b);
  const __m256d bi = _mm256_permute_pd(b, 0xF);
  const __m256d asw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, br, _mm256_mul_pd(asw, bi));
}

// a * conj(b), two complex at a time
inline __m256d cmulconj2(__m256d a, __m256d b) {
  const __m256d br = _mm256_movedup_pd(b);
  const __m256d bi = _mm256_permute_pd(b, 0xF);
  const __m256d asw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmsubadd_pd(a, br, _mm256_mul_pd(asw, bi));
}

void horner_many_avx2(const cd* coeff, std::size_t ncoeff, const cd* z,
                      std::size_t n, cd* out) {
  const double* zp = reinterpret_cast<const double*>(z);
  double* op = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d z0 = _mm256_loadu_pd(zp + 2 * i);
    const __m256d z1 = _mm256_loadu_pd(zp + 2 * i + 4);
    __m256d a0 = _mm256_broadcast_pd(
        reinterpret_cast<const __m128d*>(coeff + ncoeff - 1));
    __m256d a1 = a0;
    for (std::size_t k = ncoeff - 1; k-- > 0;) {
      const __m256d c =
          _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(coeff + k));
      a0 = _mm256_add_pd(cmul2(a0, z0), c);
      a1 = _mm256_add_pd(cmul2(a1, z1), c);
    }
    _mm256_storeu_pd(op + 2 * i, a0);
    _mm256_storeu_pd(op + 2 * i + 4, a1);
  }
  for (; i < n; ++i) {  // tail
    const double zr = z[i].real(), zi = z[i].imag();
    double ar = coeff[ncoeff - 1].real(), ai = coeff[ncoeff - 1].imag();
    for (std::size_t k = ncoeff - 1; k-- > 0;) {
      const double tr = std::fma(ar, zr, std::fma(-ai, zi, coeff[k].real()));
      const double ti = std::fma(ar, zi, std::fma(ai, zr, coeff[k].imag()));
      ar = tr;
      ai = ti;
    }
    out[i] = cd(ar, ai);
  }
}

void cmul_many_avx2(const cd* a, const cd* b, std::size_t n, cd* out) {
  const double* ap = reinterpret_cast<const double*>(a);
  const double* bp = reinterpret_cast<const double*>(b);
  double* op = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(op + 2 * i, cmul2(_mm256_loadu_pd(ap + 2 * i),
                                       _mm256_loadu_pd(bp + 2 * i)));
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = cd(std::fma(ar, br, -ai * bi), std::fma(ai, br, ar * bi));
  }
}

void abs2_many_avx2(const cd* a, std::size_t n, double* out) {
  const double* ap = reinterpret_cast<const double*>(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(ap + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(ap + 2 * i + 4);
    const __m256d h =
        _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
    // hadd interleaves the two sources; put the four |.|^2 back in order
    _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(h, 0xD8));
  }
  for (; i < n; ++i)
    out[i] = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) s = std::fma(a[i], b[i], s);
  return s;
}

cd wcdot_avx2(const double* w, const cd* a, const cd* b, std::size_t n) {
  const double* ap = reinterpret_cast<const double*>(a);
  const double* bp = reinterpret_cast<const double*>(b);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d prod = cmulconj2(_mm256_loadu_pd(ap + 2 * i),
                                   _mm256_loadu_pd(bp + 2 * i));
    const __m256d wv = _mm256_set_m128d(_mm_set1_pd(w[i + 1]),
                                        _mm_set1_pd(w[i]));
    acc = _mm256_fmadd_pd(prod, wv, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sr = lanes[0] + lanes[2], si = lanes[1] + lanes[3];
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    sr = std::fma(w[i], std::fma(ar, br, ai * bi), sr);
    si = std::fma(w[i], std::fma(ai, br, -ar * bi), si);
  }
  return cd(sr, si);
}

double wpow_sum_avx2(const double* w, const double* t, std::size_t n,
                     double e) {
  std::size_t i = 0;
  __m256d acc = _mm256_setzero_pd();
  if (e == 1.0) {
    for (; i + 4 <= n; i += 4)
      acc =
          _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(t + i), acc);
  } else if (e == 2.0) {
    for (; i + 4 <= n; i += 4) {
      const __m256d tv = _mm256_loadu_pd(t + i);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_mul_pd(tv, tv), acc);
    }
  } else if (e == 0.5) {
    for (; i + 4 <= n; i += 4)
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i),
                            _mm256_sqrt_pd(_mm256_loadu_pd(t + i)), acc);
  } else {
    // general exponent: no vector pow; defer to the scalar reference
    return scalar_table().wpow_sum(w, t, n, e);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) {
    const double ti = (e == 1.0) ? t[i] : (e == 2.0 ? t[i] * t[i] : std::sqrt(t[i]));
    s = std::fma(w[i], ti, s);
  }
  return s;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t = {horner_many_avx2, cmul_many_avx2,
                                abs2_many_avx2,   dot_avx2,
                                wcdot_avx2,       wpow_sum_avx2};
  return t;
}

}  // namespace xlab::kern

#endif  // XLAB_BUILD_AVX2 && __AVX2__ && __FMA__
