#pragma once

// Array kernels behind the numerical hot loops: polynomial evaluation over
// quadrature nodes, squared moduli, and weighted reductions.  Every kernel has
// a scalar reference implementation and (on x86_64) an AVX2+FMA variant; the
// active lane is chosen once at startup from CPU detection and can be forced
// for equivalence testing.  The two lanes agree to rounding (the vector lane
// reorders sums and contracts multiply-adds), not bit-for-bit.

#include <complex>
#include <cstddef>

namespace xlab::kern {

using cd = std::complex<double>;

enum class Lane { scalar, avx2 };

Lane active_lane();
const char* lane_name();
bool lane_available(Lane lane);
// Force a lane (throws std::runtime_error if unavailable on this CPU/build).
void force_lane(Lane lane);
// Return to CPU auto-detection.
void auto_lane();

// out[i] = sum_k coeff[k] * z[i]^k, coefficients low to high, ncoeff >= 1.
void horner_many(const cd* coeff, std::size_t ncoeff, const cd* z,
                 std::size_t n, cd* out);

// out[i] = a[i] * b[i]
void cmul_many(const cd* a, const cd* b, std::size_t n, cd* out);

// out[i] = |a[i]|^2
void abs2_many(const cd* a, std::size_t n, double* out);

// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);

// sum_i w[i] * a[i] * conj(b[i])  (w real)
cd wcdot(const double* w, const cd* a, const cd* b, std::size_t n);

// sum_i w[i] * t[i]^e with t[i] >= 0.  e in {0.5, 1, 2} takes the fast path;
// any other exponent goes through std::pow in every lane.
double wpow_sum(const double* w, const double* t, std::size_t n, double e);

// Implementation tables (internal; exposed for the dispatcher and tests).
struct KernelTable {
  void (*horner_many)(const cd*, std::size_t, const cd*, std::size_t, cd*);
  void (*cmul_many)(const cd*, const cd*, std::size_t, cd*);
  void (*abs2_many)(const cd*, std::size_t, double*);
  double (*dot)(const double*, const double*, std::size_t);
  cd (*wcdot)(const double*, const cd*, const cd*, std::size_t);
  double (*wpow_sum)(const double*, const double*, std::size_t, double);
};

const KernelTable& scalar_table();
#if defined(XLAB_BUILD_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace xlab::kern
