#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "xlab/common.hpp"
#include "xlab/conformal.hpp"

using xlab::cd;
using xlab::ExteriorMap;

TEST_CASE("disk map is the identity with full plane evaluation") {
  const auto m = ExteriorMap::disk();
  CHECK(m.psi(cd(0.3, -0.7)) == cd(0.3, -0.7));
  CHECK(m.phi(cd(0.1, 0.0)) == cd(0.1, 0.0));  // interior is fine here
  CHECK(m.green(cd(2.0, 0.0)) == doctest::Approx(std::log(2.0)));
  const auto f5 = m.faber(5);
  REQUIRE(f5.coeff.size() == 6);
  CHECK(f5.coeff[5] == cd(1.0));
  for (int k = 0; k < 5; ++k) CHECK(std::abs(f5.coeff[k]) < 1e-14);
}

TEST_CASE("laurent map round trip and derivative") {
  // psi(w) = w + 0.2/w
  const auto m = ExteriorMap::laurent({cd(0.0), cd(0.2)});
  const cd w(1.3, 0.4);
  const cd z = m.psi(w);
  CHECK(std::abs(z - (w + 0.2 / w)) < 1e-14);
  CHECK(std::abs(m.phi(z) - w) < 1e-11);
  // centered finite difference on psi
  const cd h(1e-6, 0.0);
  const cd fd = (m.psi(w + h) - m.psi(w - h)) / (2.0 * h);
  CHECK(std::abs(m.psi_prime(w) - fd) < 1e-8);
  // phi rejects points strictly inside the working annulus image: one off
  // the real axis (Newton converges to a sub-rho preimage) and one on the
  // slit the critical circle maps onto (Newton stalls and the stall is
  // classified)
  CHECK_THROWS_AS(m.phi(cd(0.05, 0.3)), xlab::DomainError);
  CHECK_THROWS_AS(m.phi(cd(0.05, 0.0)), xlab::DomainError);
}

TEST_CASE("laurent Faber polynomials strip the w^0..w^{-k} tail") {
  // psi(w) = w + 0.2/w: squaring gives w^2 + 0.4 + 0.04 w^-2, so the
  // degree-2 monic polynomial matching w^2 + O(w^-1) is z^2 - 0.4
  const auto m = ExteriorMap::laurent({cd(0.0), cd(0.2)});
  const auto f2 = m.faber(2);
  REQUIRE(f2.coeff.size() == 3);
  CHECK(std::abs(f2.coeff[2] - cd(1.0)) < 1e-12);
  CHECK(std::abs(f2.coeff[1]) < 1e-12);
  CHECK(std::abs(f2.coeff[0] - cd(-0.4)) < 1e-12);

  // F_n(psi(w)) - w^n is O(1/w) on |w| = 1.5 for a few degrees
  for (int n : {1, 2, 3, 6}) {
    const auto f = m.faber(n);
    CHECK(!f.truncation_suspect);
    const cd w = 1.5 * std::polar(1.0, 0.9);
    const cd err = f.eval(m.psi(w)) - std::pow(w, n);
    CHECK(std::abs(err) < 0.5 / 1.5);  // coarse O(1/w) sanity bound
  }
}

TEST_CASE("power family map: explicit branch values") {
  // phi(z)^3 = z^3 - 1, psi(w) = (w^3 + 1)^{1/3} on the branch ~ w
  const auto m = ExteriorMap::power_family(3, cd(1.0, 0.0));
  CHECK(m.psi(cd(2.0, 0.0)).real() ==
        doctest::Approx(2.080083823051904).epsilon(1e-15));
  CHECK(std::abs(m.psi(cd(2.0, 0.0)).imag()) < 1e-15);
  CHECK(m.green(m.psi(cd(2.0, 0.0))) == doctest::Approx(std::log(2.0)));
  // |c| = 1 leaves no working annulus
  CHECK(!m.has_annulus());
  CHECK(m.rho() == doctest::Approx(1.0));

  const auto f3 = m.faber(3);  // phi^3 = z^3 - 1 exactly
  REQUIRE(f3.coeff.size() == 4);
  CHECK(std::abs(f3.coeff[0] - cd(-1.0)) < 1e-12);
  CHECK(std::abs(f3.coeff[1]) < 1e-12);
  CHECK(std::abs(f3.coeff[2]) < 1e-12);
  CHECK(std::abs(f3.coeff[3] - cd(1.0)) < 1e-12);

  const auto f6 = m.faber(6);  // (z^3 - 1)^2
  REQUIRE(f6.coeff.size() == 7);
  CHECK(std::abs(f6.coeff[0] - cd(1.0)) < 1e-11);
  CHECK(std::abs(f6.coeff[3] - cd(-2.0)) < 1e-11);
  CHECK(std::abs(f6.coeff[6] - cd(1.0)) < 1e-11);
}

TEST_CASE("power family annulus defaults and rejection") {
  const auto m = ExteriorMap::power_family(3, cd(0.5, 0.0));
  const double rt = std::pow(0.5, 1.0 / 3.0);
  CHECK(m.rho_tilde() == doctest::Approx(rt).epsilon(1e-14));
  CHECK(m.rho() == doctest::Approx(0.5 * (rt + 1.0)).epsilon(1e-14));
  CHECK(m.has_annulus());
  CHECK_THROWS_AS(ExteriorMap::power_family(3, cd(1.5, 0.0)),
                  xlab::DomainError);
  CHECK_THROWS_AS(ExteriorMap::power_family(1, cd(0.5, 0.0)),
                  xlab::DomainError);
}

TEST_CASE("capacity normalization: psi(w)/w -> 1") {
  for (const auto& m :
       {ExteriorMap::laurent({cd(0.3, 0.1), cd(0.2), cd(0.0), cd(-0.05)}),
        ExteriorMap::power_family(4, cd(0.3, 0.2))}) {
    const cd w(800.0, 13.0);
    CHECK(std::abs(m.psi(w) / w - cd(1.0)) < 1e-2);
    CHECK(m.capacity() == 1.0);
  }
}

TEST_CASE("equilibrium moments vanish under the boundary pushforward") {
  const auto m = ExteriorMap::laurent({cd(0.1, 0.0), cd(0.25, -0.1)});
  const auto mom = m.equilibrium_moments(4, 512);
  REQUIRE(mom.size() == 4);
  for (const cd& v : mom) CHECK(std::abs(v) < 1e-10);

  // the degenerate cubic boundary passes through its own branch points;
  // the midpoint rule keeps the moments finite and tiny anyway
  const auto p = ExteriorMap::power_family(3, cd(1.0, 0.0));
  for (const cd& v : p.equilibrium_moments(3, 2048)) CHECK(std::abs(v) < 1e-3);
}

TEST_CASE("laurent univalence screen rejects a folding map") {
  // psi(w) = w + 2/w maps |w| near 1 two-to-one (derivative zero at sqrt 2)
  CHECK_THROWS_AS(ExteriorMap::laurent({cd(0.0), cd(2.0)}), xlab::DomainError);
}
