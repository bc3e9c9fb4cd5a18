#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "xlab/common.hpp"
#include "xlab/measure.hpp"

using xlab::AngularMeasure;
using xlab::cd;
using xlab::Discretization;
using xlab::ExteriorMap;
using xlab::HWeight;
using xlab::RadialMeasure;
using xlab::RegionMeasure;

TEST_CASE("radial moments: closed forms for the built-in families") {
  CHECK(xlab::radial_moment(RadialMeasure::delta_one(), 7.0) == 1.0);
  CHECK(xlab::radial_moment(RadialMeasure::uniform(), 4.0) ==
        doctest::Approx(1.0 / 5.0).epsilon(1e-12));
  CHECK(xlab::radial_moment(RadialMeasure::area(), 4.0) ==
        doctest::Approx(2.0 / 6.0).epsilon(1e-12));
  CHECK(xlab::radial_moment(RadialMeasure::one_minus_r(), 3.0) ==
        doctest::Approx(2.0 / 20.0).epsilon(1e-12));
  // unit-mass r^2 density on [0,1] is 3 r^2, so c_t = 3/(t+3)
  CHECK(xlab::radial_moment(RadialMeasure::power(2.0, 0.0), 5.0) ==
        doctest::Approx(3.0 / 8.0).epsilon(1e-10));
}

TEST_CASE("radial moments: atoms and the sparse geometric family") {
  auto two = RadialMeasure::from_atoms({{0.5, 0.25}, {1.0, 0.75}});
  CHECK(xlab::radial_moment(two, 2.0) ==
        doctest::Approx(0.25 * 0.25 + 0.75).epsilon(1e-14));
  CHECK(two.total_mass() == doctest::Approx(1.0));

  // tail-corrected closed form vs a long direct sum; the atoms past j = 60
  // still carry ~1% of the mass, with (1 - 2^-j)^t equal to 1 within ~1e-15
  // at these t, so the tail enters as the leftover mass
  const auto sp = RadialMeasure::sparse_geometric();
  for (double t : {4.0, 100.0, 4096.0}) {
    double direct = 0.0, head = 0.0;
    const double c = 6.0 / (xlab::PI * xlab::PI);
    for (int j = 1; j <= 60; ++j) {
      const double w = c / (double(j) * j);
      head += w;
      direct += w * std::pow(1.0 - std::ldexp(1.0, -j), t);
    }
    direct += 1.0 - head;
    CHECK(xlab::radial_moment(sp, t) == doctest::Approx(direct).epsilon(1e-9));
  }
  CHECK(sp.total_mass() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("angular families: total mass and exact log-means") {
  // the families keep their natural scale rather than normalizing: the
  // Bernstein density integrates to 1 + |c|^2 (Parseval), two_level to the
  // arc-weighted average of its levels
  const std::pair<AngularMeasure, double> cases[] = {
      {AngularMeasure::uniform(), 1.0},
      {AngularMeasure::abs_linear_sq(cd(0.5, 0.2)), 1.0 + 0.29},
      {AngularMeasure::one_plus_cos(), 1.0},
      {AngularMeasure::two_level(2.0, 0.5, 0.3, 1.9),
       (2.0 * 1.6 + 0.5 * (2 * xlab::PI - 1.6)) / (2 * xlab::PI)}};
  for (const auto& [nu, want] : cases) {
    double mass = 0.0;
    const int N = 1 << 14;
    for (int i = 0; i < N; ++i)
      mass += nu.density(2 * xlab::PI * (i + 0.5) / N) / N;
    CHECK(mass == doctest::Approx(want).epsilon(1e-3));
  }
  CHECK(AngularMeasure::uniform().log_density_mean() == doctest::Approx(0.0));
  CHECK(AngularMeasure::abs_linear_sq(cd(0.5, 0.2)).log_density_mean() ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(AngularMeasure::one_plus_cos().log_density_mean() ==
        doctest::Approx(-std::log(2.0)).epsilon(1e-12));
  CHECK(AngularMeasure::abs_linear_sq(cd(0.5, 0.2)).szego());
  CHECK_THROWS_AS(AngularMeasure::abs_linear_sq(cd(1.0, 0.2)),
                  xlab::DomainError);
}

TEST_CASE("discretize: mass accounting and node provenance") {
  RegionMeasure mu = RegionMeasure::product(
      ExteriorMap::disk(), RadialMeasure::delta_one(),
      AngularMeasure::uniform());
  mu.exterior_atoms.push_back({cd(2.0, 0.0), 0.5});
  mu.sigma1.push_back({cd(0.2, 0.1), 0.3});
  mu.validate();
  const Discretization d = xlab::discretize(mu, 128, 16);
  CHECK(d.total_mass == doctest::Approx(1.8).epsilon(1e-12));
  double w = 0.0;
  int atoms = 0, sig = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d.weight[i] > 0.0);
    w += d.weight[i];
    if (d.tag[i] == xlab::NodeTag::atom_exterior) ++atoms;
    if (d.tag[i] == xlab::NodeTag::sigma1) ++sig;
  }
  CHECK(w == doctest::Approx(d.total_mass).epsilon(1e-12));
  CHECK(atoms == 1);
  CHECK(sig == 1);
}

TEST_CASE("discretize rejects an undeclared density jump") {
  AngularMeasure nu = AngularMeasure::uniform();
  nu.density = [](double t) { return t < 1.0 ? 1.7 : 0.8; };  // no splits
  RegionMeasure mu = RegionMeasure::product(
      ExteriorMap::disk(), RadialMeasure::delta_one(), nu);
  CHECK_THROWS_AS(xlab::discretize(mu, 256, 8), xlab::ConvergenceError);
}

TEST_CASE("validate rejects misplaced mass") {
  RegionMeasure in = RegionMeasure::product(ExteriorMap::disk(),
                                            RadialMeasure::delta_one(),
                                            AngularMeasure::uniform());
  in.exterior_atoms.push_back({cd(0.5, 0.0), 1.0});  // interior point
  CHECK_THROWS_AS(in.validate(), xlab::ConfigError);

  RegionMeasure low = RegionMeasure::product(
      ExteriorMap::laurent({cd(0.0), cd(0.2)}), RadialMeasure::area(),
      AngularMeasure::uniform());
  CHECK_THROWS(low.validate());  // radial support dips below rho

  RegionMeasure bd = RegionMeasure::product(ExteriorMap::disk(),
                                            RadialMeasure::delta_one(),
                                            AngularMeasure::uniform());
  bd.boundary_atoms.push_back({cd(0.9, 0.0), 1.0});  // not on the curve
  CHECK_THROWS_AS(bd.validate(), xlab::ConfigError);
}

TEST_CASE("gram matrix of circle plus exterior atom") {
  RegionMeasure mu = RegionMeasure::product(
      ExteriorMap::disk(), RadialMeasure::delta_one(),
      AngularMeasure::uniform());
  mu.exterior_atoms.push_back({cd(2.0, 0.0), 1.0});
  const auto G = xlab::gram_matrix(xlab::discretize(mu, 64, 4), 1);
  // rows/cols 0..1: moments of 1, z against the unit-mass circle + atom
  CHECK(G(0, 0).real() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(G(0, 1).real() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(G(1, 0).real() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(G(1, 1).real() == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(std::abs(G(0, 1).imag()) < 1e-12);
}

TEST_CASE("integrate agrees with a hand sum") {
  Discretization d;
  d.node = {cd(1.0, 0.0), cd(0.0, 1.0)};
  d.weight = {0.25, 0.5};
  d.tag = {xlab::NodeTag::bulk, xlab::NodeTag::bulk};
  d.total_mass = 0.75;
  const cd got = xlab::integrate(d, [](cd z) { return z * z; });
  CHECK(std::abs(got - (cd(0.25) - cd(0.5))) < 1e-15);
}

TEST_CASE("mobius pushforward: mass kept, disk kept, x0 sent to zero") {
  RegionMeasure mu = RegionMeasure::product(
      ExteriorMap::disk(), RadialMeasure::area(), AngularMeasure::uniform());
  const Discretization d = xlab::discretize(mu, 64, 16);
  const cd x0(0.4, -0.2);
  const Discretization p = xlab::mobius_pushforward(d, x0);
  REQUIRE(p.size() == d.size());
  CHECK(p.total_mass == doctest::Approx(d.total_mass));
  double wsum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(std::abs(p.node[i]) <= 1.0 + 1e-12);
    wsum += p.weight[i];
    // spot-check the map on the first node
    if (i == 0) {
      const cd want =
          (d.node[0] - x0) / (cd(1.0) - std::conj(x0) * d.node[0]);
      CHECK(std::abs(p.node[0] - want) < 1e-14);
    }
  }
  CHECK(wsum == doctest::Approx(d.total_mass));
  CHECK_THROWS_AS(xlab::mobius_pushforward(d, cd(1.1, 0.0)),
                  xlab::DomainError);
}

TEST_CASE("lemniscate measure: level-curve nodes and symmetry screen") {
  const auto tau = RadialMeasure::from_atoms({{0.5, 1.0}});
  const Discretization d = xlab::lemniscate_measure(
      tau, [](cd) { return 1.0; }, 96, 8);
  CHECK(d.size() > 0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    // every node sits on {|z^3 - 1| = 0.5}
    const cd z = d.node[i];
    CHECK(std::abs(std::abs(z * z * z - cd(1.0)) - 0.5) < 1e-9);
  }
  // h must respect the threefold symmetry of the curve family
  CHECK_THROWS_AS(xlab::lemniscate_measure(
                      tau, [](cd z) { return std::exp(z.real()); }, 96, 8),
                  xlab::DomainError);
  // levels touching the triple point are refused
  CHECK_THROWS_AS(xlab::lemniscate_measure(
                      RadialMeasure::from_atoms({{0.9999, 1.0}}),
                      [](cd) { return 1.0; }, 96, 8),
                  xlab::DomainError);
}

TEST_CASE("atomic_line builds exactly the given atoms") {
  const auto d = xlab::atomic_line({{-1.5, 0.5}, {1.5, 0.5}});
  REQUIRE(d.size() == 2);
  CHECK(d.node[0] == cd(-1.5, 0.0));
  CHECK(d.total_mass == doctest::Approx(1.0));
  CHECK_THROWS_AS(xlab::atomic_line({{0.0, -1.0}}), xlab::DomainError);
  CHECK_THROWS_AS(xlab::atomic_line({}), xlab::DomainError);
}
