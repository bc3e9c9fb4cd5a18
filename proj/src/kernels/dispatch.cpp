#include "xlab/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace xlab::kern {
namespace {

[[maybe_unused]] bool cpu_has_avx2() {
#if defined(XLAB_BUILD_AVX2) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

struct State {
  const KernelTable* table;
  Lane lane;
};

State detect() {
#if defined(XLAB_BUILD_AVX2)
  if (cpu_has_avx2()) return {&avx2_table(), Lane::avx2};
#endif
  return {&scalar_table(), Lane::scalar};
}

State& state() {
  static State s = detect();
  return s;
}

}  // namespace

Lane active_lane() { return state().lane; }

const char* lane_name() {
  return state().lane == Lane::avx2 ? "avx2" : "scalar";
}

bool lane_available(Lane lane) {
  if (lane == Lane::scalar) return true;
#if defined(XLAB_BUILD_AVX2)
  return cpu_has_avx2();
#else
  return false;
#endif
}

void force_lane(Lane lane) {
  if (!lane_available(lane))
    throw std::runtime_error("requested kernel lane is not available on this host");
#if defined(XLAB_BUILD_AVX2)
  if (lane == Lane::avx2) {
    state() = {&avx2_table(), Lane::avx2};
    return;
  }
#endif
  state() = {&scalar_table(), Lane::scalar};
}

void auto_lane() { state() = detect(); }

void horner_many(const cd* coeff, std::size_t ncoeff, const cd* z,
                 std::size_t n, cd* out) {
  state().table->horner_many(coeff, ncoeff, z, n, out);
}
void cmul_many(const cd* a, const cd* b, std::size_t n, cd* out) {
  state().table->cmul_many(a, b, n, out);
}
void abs2_many(const cd* a, std::size_t n, double* out) {
  state().table->abs2_many(a, n, out);
}
double dot(const double* a, const double* b, std::size_t n) {
  return state().table->dot(a, b, n);
}
cd wcdot(const double* w, const cd* a, const cd* b, std::size_t n) {
  return state().table->wcdot(w, a, b, n);
}
double wpow_sum(const double* w, const double* t, std::size_t n, double e) {
  return state().table->wpow_sum(w, t, n, e);
}

}  // namespace xlab::kern
