#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "xlab/common.hpp"
#include "xlab/measure.hpp"
#include "xlab/szego.hpp"

using xlab::AngularMeasure;
using xlab::cd;
using xlab::ExteriorMap;
using xlab::RadialMeasure;
using xlab::RegionMeasure;

TEST_CASE("geometric means of boundary densities") {
  CHECK(xlab::geometric_mean([](double) { return 1.0; }) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // |1 - c e^{i theta}|^2 with |c| < 1 has log-mean zero
  CHECK(xlab::geometric_mean([](double t) {
          return std::norm(cd(1.0) - 0.5 * std::polar(1.0, t));
        }) == doctest::Approx(1.0).epsilon(1e-12));
  // the zero at pi is an endpoint log singularity for the panel rule, so the
  // error decays algebraically with order, not spectrally: ~5e-5 at 2048
  CHECK(std::abs(xlab::log_geometric_mean(
            [](double t) { return 1.0 + std::cos(t); }, {xlab::PI}) +
        std::log(2.0)) < 2e-4);
  CHECK_THROWS_AS(xlab::log_geometric_mean([](double) { return 0.0; }),
                  xlab::DomainError);
}

TEST_CASE("Szego function of a Bernstein density is 1 - c/z") {
  // density |1 - 0.5 e^{i theta}|^2 factors exactly
  xlab::SzegoFunction S(2.0, [](double t) {
    return std::norm(cd(1.0) - 0.5 * std::polar(1.0, t));
  });
  CHECK(S.at_infinity() == doctest::Approx(1.0).epsilon(1e-10));
  for (const cd z : {cd(2.0, 0.0), cd(-1.7, 0.8), cd(0.0, 3.0)}) {
    const cd want = cd(1.0) - 0.5 / z;
    CHECK(std::abs(S.eval(z) - want) < 1e-9);
  }
  // q enters through the exponent: |S_q|^(q) equals |S_2|^2 radially
  xlab::SzegoFunction S4(4.0, [](double t) {
    return std::norm(cd(1.0) - 0.5 * std::polar(1.0, t));
  });
  const cd z(1.6, -0.9);
  CHECK(std::pow(std::abs(S4.eval(z)), 4.0) ==
        doctest::Approx(std::pow(std::abs(S.eval(z)), 2.0)).epsilon(1e-8));
  CHECK_THROWS_AS(S.eval(cd(1.0, 0.0)), xlab::DomainError);
}

TEST_CASE("predicted limit: atoms outside count, mass elsewhere does not") {
  RegionMeasure mu = RegionMeasure::product(ExteriorMap::disk(),
                                            RadialMeasure::delta_one(),
                                            AngularMeasure::uniform());
  mu.exterior_atoms.push_back({cd(2.0, 0.0), 0.5});
  const auto base = xlab::predicted_limit(mu, 2.0);
  CHECK(base.szego);
  CHECK(base.value == doctest::Approx(4.0).epsilon(1e-10));

  // boundary atoms and interior mass leave the prediction alone
  RegionMeasure noisy = mu;
  noisy.boundary_atoms.push_back({cd(0.0, 1.0), 3.0});
  noisy.sigma1.push_back({cd(0.1, 0.0), 2.0});
  CHECK(xlab::predicted_limit(noisy, 2.0).value ==
        doctest::Approx(base.value).epsilon(1e-12));

  // q = 4 squares the atom factor
  CHECK(xlab::predicted_limit(mu, 4.0).value ==
        doctest::Approx(16.0).epsilon(1e-10));

  // two atoms multiply
  RegionMeasure two = mu;
  two.exterior_atoms.push_back({cd(0.0, -3.0), 0.1});
  CHECK(xlab::predicted_limit(two, 2.0).value ==
        doctest::Approx(36.0).epsilon(1e-10));
}

TEST_CASE("predicted limit flags a non-Szego angular part") {
  AngularMeasure nu = AngularMeasure::uniform();
  nu.density = [](double t) { return t < xlab::PI ? 2.0 : 0.0; };
  nu.splits = {0.0, xlab::PI};
  nu.log_mean_closed.reset();
  RegionMeasure mu = RegionMeasure::product(ExteriorMap::disk(),
                                            RadialMeasure::delta_one(), nu);
  const auto p = xlab::predicted_limit(mu, 2.0);
  CHECK(!p.szego);
  CHECK(p.value == 0.0);
}

TEST_CASE("circular mean of log|psi - x| equals the Green value") {
  const auto disk = ExteriorMap::disk();
  for (double r : {0.6, 1.0})
    for (double q : {1.0, 2.0}) {
      const auto [lhs, rhs] = xlab::psiint_check(disk, cd(2.0, 0.0), r, q);
      CHECK(rhs == doctest::Approx(q * std::log(2.0)).epsilon(1e-14));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }

  const auto lau = ExteriorMap::laurent({cd(0.0), cd(0.2)});
  const cd x = lau.psi(cd(1.9, 0.7));
  const auto [lhs, rhs] = xlab::psiint_check(lau, x, 0.9, 2.0);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));

  // r below the working annulus and interior x are rejected
  CHECK_THROWS_AS(xlab::psiint_check(lau, x, 0.3, 2.0), xlab::DomainError);
  CHECK_THROWS_AS(xlab::psiint_check(lau, cd(0.0, 0.0), 1.0, 2.0),
                  xlab::DomainError);
}
