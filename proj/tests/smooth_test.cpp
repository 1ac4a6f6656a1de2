#include <cmath>
#include <numbers>

#include "doctest.h"
#include "eres/errors.hpp"
#include "eres/smooth.hpp"
#include "eres/triangular.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace eres;
using eres::testing::Gen;
using eres::testing::rel_diff;
using std::numbers::pi;

namespace {

PotentialModel sampled_line(double V, double E0, double m, int n) {
  std::vector<double> x, v;
  const double top = 5 * V / E0;
  for (int i = 0; i <= n; ++i) {
    x.push_back(top * i / n);
    v.push_back(V - E0 * x.back());
  }
  return PotentialModel::tabulated(x, v, m, 0.0);
}

PotentialModel sine_barrier() {
  std::vector<double> x, v;
  for (int i = 0; i <= 2800; ++i) {
    x.push_back(i / 2000.0);
    v.push_back(20 * std::sin(pi * x.back()));
  }
  return PotentialModel::tabulated(x, v, 1.0);
}

}  // namespace

TEST_CASE("potential values") {
  const auto c = PotentialModel::coulomb(2.0, 1.0);
  CHECK(c.V(4.0) == 0.5);
  CHECK(c.dV(2.0) == doctest::Approx(-0.5));
  CHECK(c.rise(1.0, 1e-9) == doctest::Approx(-2e-9 / (1 + 1e-9)).epsilon(1e-12));
  CHECK(outer_turning_point(c, 0.25) == doctest::Approx(8.0));
  CHECK_THROWS_AS(outer_turning_point(c, -1.0), RootNotFound);
  const auto t = PotentialModel::triangular(3.0, 0.5, 1.0);
  CHECK(outer_turning_point(t, 1.0) == doctest::Approx(4.0));
  CHECK(std::abs(t.V(numerics::cplx(1, 1)) - numerics::cplx(2.5, -0.5)) < 1e-15);
}

TEST_CASE("tabulated potential parsing") {
  const auto f = parse_tabulated("# units: nuclear\n0 5\n1 3 # comment\n2 1\n");
  CHECK(f.units == UnitSystem::nuclear);
  REQUIRE(f.x.size() == 3);
  CHECK(f.v[1] == 3.0);
  CHECK_THROWS_AS(parse_tabulated("0 1\n1 0\n"), DomainError);
  CHECK_THROWS_AS(parse_tabulated("units: atomic\n0 1\n0 0\n"), DomainError);
  CHECK_THROWS_AS(parse_tabulated("units: atomic\n0 1\n1\n"), DomainError);
  CHECK_THROWS_AS(read_tabulated_file("/nonexistent/table.dat"), DomainError);
  const auto s = sine_barrier();
  const auto roots = turning_points(s, 10.0);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(1.0 / 6).epsilon(1e-9));
  CHECK(roots[1] == doctest::Approx(5.0 / 6).epsilon(1e-9));
}

TEST_CASE("theta of the energy gain on a triangular barrier") {
  Gen g(8);
  for (int i = 0; i < 40; ++i) {
    const double V = g.uniform(0.5, 5), E0 = g.uniform(0.1, 2), m = g.uniform(0.5, 3);
    const double E = g.uniform(-1, 0.9) * V, dE = -g.uniform(0, 2) * V;
    const double expect = std::sqrt(2 * m * (V - E - dE)) / E0;
    CHECK(rel_diff(theta_of_deltaE(PotentialModel::triangular(V, E0, m), E, dE), expect) < 1e-11);
    CHECK(rel_diff(theta_of_deltaE(sampled_line(V, E0, m, 7), E, dE), expect) < 1e-11);
  }
}

TEST_CASE("coulomb tail against closed forms") {
  const double beta = 0.84649, m = 3727.0;
  const auto c = PotentialModel::coulomb(beta, m);
  for (double E : {1e-3, 0.1, 1.9, 10.0}) {
    const double theta = 1.3 * oracle::coulomb_theta(beta, m, E);
    const double dE = deltaE_of_theta(c, E, theta);
    CHECK(rel_diff(oracle::coulomb_theta(beta, m, E + dE), theta) < 1e-12);
    CHECK(rel_diff(action_smooth(c, E, theta), oracle::coulomb_action(beta, m, E, theta)) < 1e-12);
  }
  CHECK(std::isinf(attainable_theta(c, 1.0).theta_max));
  CHECK(deltaE_of_theta(c, 1.0, oracle::coulomb_theta(beta, m, 1.0)) == 0.0);
  CHECK_THROWS_AS(deltaE_of_theta(c, 1.0, 0.5 * oracle::coulomb_theta(beta, m, 1.0)), DomainError);
  CHECK_THROWS_AS(theta_of_deltaE(c, 1.0, 0.1), DomainError);
}

TEST_CASE("coulomb resonance") {
  const double beta = 0.84649, m = 3727.0, E = 1.9;
  const auto c = PotentialModel::coulomb(beta, m);
  const double thR = pi * beta * std::sqrt(27 * m / (8 * E * E * E));
  const double ER = resonance_energy_smooth(c, thR);
  CHECK(rel_diff(ER, E) < 1e-12);
  CHECK(rel_diff((ER + deltaE_of_theta(c, ER, thR)) / ER, 1.0 / 3) < 1e-12);
  CHECK(std::abs(action_smooth(c, ER, thR)) < 1e-9 * pi * beta * std::sqrt(2 * m / E));
}

TEST_CASE("energy gain from a kick") {
  CHECK(deltaE_from_kick(2.0, -3.0, 4.0) == doctest::Approx(-6.0 + 0.5));
  CHECK(deltaE_from_kick(0.0, -3.0, 4.0) == 0.0);
}

TEST_CASE("triangular limit of the smooth solver") {
  const BarrierSpec s{0.5, 0.0, 3.8894e-3, 1.0};
  const double theta = 0.9 * resonance_theta(s);
  const auto r = triangular_limit_check(s, theta, std::sqrt(15.0) / theta);
  CHECK(r.max_relative_deviation < 1e-9);
  CHECK(r.E_R_smooth == doctest::Approx(0.095).epsilon(1e-9));
}

TEST_CASE("tabulated line matches the triangular resonance") {
  const BarrierSpec s{0.5, 0.0, 0.01, 1.0};
  const double theta = 0.9 * resonance_theta(s);
  const double ER = resonance_energy_smooth(sampled_line(s.V, s.E0, s.m, 30), theta);
  CHECK(std::abs(ER - oracle::resonance_energy(s, theta)) < 1e-9 * s.V);
}

TEST_CASE("contour integration") {
  const BarrierSpec s{0.5, 0.0, 3.8894e-3, 1.0};
  const double t00 = tau00(s);
  const auto tri = PotentialModel::triangular(s.V, s.E0, s.m);

  SUBCASE("free motion is the triangular parabola") {
    const Pulse off{PulseShape::lorentz_gaussian, 0.0, std::sqrt(15.0) / t00, t00};
    const auto tr = integrate_euclidean(tri, off, s.E, t00);
    for (const auto& p : tr.samples) {
      if (p.segment != 1) continue;
      const double expect = s.E0 / (2 * s.m) * (t00 * t00 - p.s * p.s);
      CHECK(std::abs(p.x.real() - expect) < 1e-10 * (s.V / s.E0));
    }
    CHECK(rel_diff(tr.A_measured, static_action(s)) < 1e-9);
    CHECK(std::abs(tr.impulse) < 1e-300);
  }

  SUBCASE("kick on a smooth barrier") {
    const auto sb = sine_barrier();
    const double E = 10.0, theta = 1.08 * theta_of_deltaE(sb, E, 0.0), W = std::sqrt(15.0) / theta;
    const Pulse p{PulseShape::lorentz_gaussian, extremal_field(sb, E, theta, W), W, theta};
    const auto tr = integrate_euclidean(sb, p, E, theta);
    CHECK(rel_diff(std::abs(tr.impulse), tr.kick_expected) < 1e-9);
    CHECK(rel_diff(tr.deltaE_formula, tr.deltaE) < 1e-6);
    CHECK(rel_diff(tr.A_measured, action_smooth(sb, E, theta)) < 1e-6);
    CHECK(std::abs(tr.coordinate_jump) < 0.01);
  }

  const Pulse q{PulseShape::quartic_gaussian, 1.0, 1.0, t00};
  CHECK_THROWS_AS(integrate_euclidean(tri, q, s.E, t00), DomainError);
}
