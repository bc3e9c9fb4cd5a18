#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "xlab/kernels.hpp"

using xlab::kern::cd;

namespace {

// deterministic inputs; sizes straddle the vector width so the remainder
// loop is always exercised
std::vector<cd> random_cvec(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<cd> v(n);
  for (auto& z : v) z = cd(u(rng), u(rng));
  return v;
}

std::vector<double> random_rvec(std::size_t n, unsigned seed, double lo,
                                double hi) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 63, 200};

cd horner_ref(const std::vector<cd>& coeff, cd z) {
  cd acc = coeff.back();
  for (std::size_t k = coeff.size() - 1; k-- > 0;) acc = acc * z + coeff[k];
  return acc;
}

struct LaneGuard {
  ~LaneGuard() { xlab::kern::auto_lane(); }
};

}  // namespace

TEST_CASE("horner_many matches the reference polynomial evaluation") {
  const auto coeff = random_cvec(9, 11);
  for (std::size_t n : kSizes) {
    const auto z = random_cvec(n, 17 + (unsigned)n);
    std::vector<cd> out(n);
    xlab::kern::horner_many(coeff.data(), coeff.size(), z.data(), n,
                            out.data());
    for (std::size_t i = 0; i < n; ++i) {
      const cd want = horner_ref(coeff, z[i]);
      CHECK(std::abs(out[i] - want) <= 1e-12 * (1.0 + std::abs(want)));
    }
  }
}

TEST_CASE("elementwise kernels match plain loops") {
  for (std::size_t n : kSizes) {
    const auto a = random_cvec(n, 23 + (unsigned)n);
    const auto b = random_cvec(n, 29 + (unsigned)n);
    std::vector<cd> prod(n);
    std::vector<double> sq(n);
    xlab::kern::cmul_many(a.data(), b.data(), n, prod.data());
    xlab::kern::abs2_many(a.data(), n, sq.data());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(prod[i] - a[i] * b[i]) <= 1e-14 * (1 + std::abs(prod[i])));
      CHECK(sq[i] == doctest::Approx(std::norm(a[i])).epsilon(1e-14));
    }
  }
}

TEST_CASE("reductions match plain accumulation") {
  for (std::size_t n : kSizes) {
    const auto w = random_rvec(n, 31 + (unsigned)n, 0.0, 1.0);
    const auto x = random_rvec(n, 37 + (unsigned)n, -1.0, 1.0);
    const auto a = random_cvec(n, 41 + (unsigned)n);
    const auto b = random_cvec(n, 43 + (unsigned)n);

    double dref = 0.0;
    for (std::size_t i = 0; i < n; ++i) dref += w[i] * x[i];
    CHECK(xlab::kern::dot(w.data(), x.data(), n) ==
          doctest::Approx(dref).epsilon(1e-12));

    cd cref(0.0);
    for (std::size_t i = 0; i < n; ++i) cref += w[i] * a[i] * std::conj(b[i]);
    const cd got = xlab::kern::wcdot(w.data(), a.data(), b.data(), n);
    CHECK(std::abs(got - cref) <= 1e-12 * (1.0 + std::abs(cref)));
  }
}

TEST_CASE("wpow_sum fast exponents agree with the pow path") {
  const std::size_t n = 257;
  const auto w = random_rvec(n, 47, 0.1, 1.0);
  const auto t = random_rvec(n, 53, 0.0, 4.0);
  for (double e : {0.5, 1.0, 2.0, 0.75, 1.7}) {
    double ref = 0.0;
    for (std::size_t i = 0; i < n; ++i) ref += w[i] * std::pow(t[i], e);
    CHECK(xlab::kern::wpow_sum(w.data(), t.data(), n, e) ==
          doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("lane dispatch state machine") {
  CHECK(xlab::kern::lane_available(xlab::kern::Lane::scalar));
  LaneGuard restore;
  xlab::kern::force_lane(xlab::kern::Lane::scalar);
  CHECK(xlab::kern::active_lane() == xlab::kern::Lane::scalar);
  CHECK(std::string(xlab::kern::lane_name()) == "scalar");
  if (!xlab::kern::lane_available(xlab::kern::Lane::avx2)) {
    CHECK_THROWS_AS(xlab::kern::force_lane(xlab::kern::Lane::avx2),
                    std::runtime_error);
  }
  xlab::kern::auto_lane();
}

TEST_CASE("scalar and vector lanes agree to rounding") {
  if (!xlab::kern::lane_available(xlab::kern::Lane::avx2)) {
    MESSAGE("no avx2 lane on this host; equivalence pass skipped");
    return;
  }
  LaneGuard restore;
  const auto coeff = random_cvec(13, 59);
  for (std::size_t n : {5ul, 64ul, 1001ul}) {
    const auto z = random_cvec(n, 61 + (unsigned)n);
    const auto w = random_rvec(n, 67 + (unsigned)n, 0.0, 1.0);
    const auto t = random_rvec(n, 71 + (unsigned)n, 0.0, 3.0);

    xlab::kern::force_lane(xlab::kern::Lane::scalar);
    std::vector<cd> h_s(n);
    xlab::kern::horner_many(coeff.data(), coeff.size(), z.data(), n,
                            h_s.data());
    const cd wc_s = xlab::kern::wcdot(w.data(), z.data(), h_s.data(), n);
    const double wp_s = xlab::kern::wpow_sum(w.data(), t.data(), n, 1.5);

    xlab::kern::force_lane(xlab::kern::Lane::avx2);
    std::vector<cd> h_v(n);
    xlab::kern::horner_many(coeff.data(), coeff.size(), z.data(), n,
                            h_v.data());
    const cd wc_v = xlab::kern::wcdot(w.data(), z.data(), h_v.data(), n);
    const double wp_v = xlab::kern::wpow_sum(w.data(), t.data(), n, 1.5);

    // summation order differs between lanes, so the comparison allows a
    // few ulps scaled by the reduction length
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(h_s[i] - h_v[i]) <= 1e-12 * (1.0 + std::abs(h_s[i])));
    CHECK(std::abs(wc_s - wc_v) <= 1e-11 * (1.0 + std::abs(wc_s)));
    CHECK(wp_v == doctest::Approx(wp_s).epsilon(1e-11));
  }
}
