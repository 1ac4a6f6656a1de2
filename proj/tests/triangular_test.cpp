#include <cmath>
#include <numbers>

#include "doctest.h"
#include "eres/errors.hpp"
#include "eres/triangular.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace eres;
using eres::testing::Gen;
using eres::testing::rel_diff;

namespace {

// E0 = m = 1, so tau00 = sqrt(2 (V - E)).
BarrierSpec unit_spec(double t00) { return {t00 * t00 / 2, 0.0, 1.0, 1.0, UnitSystem::atomic}; }

Pulse quartic(double E0, double lambda, double theta, double w4t4 = 16) {
  const double W = std::pow(w4t4, 0.25) / theta;
  return {PulseShape::quartic_gaussian, E0 * relative_amplitude_for_lambda(lambda, W, theta), W, theta};
}

}  // namespace

TEST_CASE("static quantities") {
  const BarrierSpec s{2.0, 0.5, 3.0, 4.0};
  CHECK(tau00(s) == doctest::Approx(std::sqrt(12.0) / 3));
  CHECK(static_action(s) == doctest::Approx(oracle::static_action(s)));
  CHECK(resonance_theta(s) == doctest::Approx(std::sqrt(36.0) / 3));
  CHECK(lambda_threshold == doctest::Approx(1 - 1 / std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("three branches of the worked example") {
  const BarrierSpec s = unit_spec(0.8);
  const BranchSet bs = solve_branches(s, {0.5, 1.0});
  REQUIRE(bs.branches.size() == 3);
  const double tau1[] = {0.8, 1.0, 1.3};
  const double action[] = {0.34133333333333, 0.30666666666667, 0.36966666666667};
  for (int i = 0; i < 3; ++i) {
    CHECK(bs.branches[i].tau1 == doctest::Approx(tau1[i]));
    CHECK(bs.branches[i].action == doctest::Approx(action[i]).epsilon(1e-12));
    CHECK(bs.branches[i].action == doctest::Approx(oracle::step_action(s, 0.5, 1.0, tau1[i])).epsilon(1e-12));
  }
  CHECK(bs.selected_branch().kind == BranchKind::jump);
  CHECK(action_closed(s, {0.5, 1.0}) == doctest::Approx(0.30666666666667).epsilon(1e-12));
  CHECK(action_quadrature(s, StepProfile{0.5, 1.0}, 1.3) == doctest::Approx(0.36966666666667).epsilon(1e-12));
}

TEST_CASE("branch enumeration limits") {
  const BranchSet none = solve_branches(unit_spec(0.8), {0.0, 1.0});
  REQUIRE(none.branches.size() == 1);
  CHECK(none.branches[0].action == doctest::Approx(static_action(unit_spec(0.8))));
  const BranchSet late = solve_branches(unit_spec(2.0), {0.5, 1.0});
  REQUIRE(late.branches.size() == 1);
  CHECK(late.branches[0].kind == BranchKind::post_kick);
  CHECK(late.branches[0].tau1 == doctest::Approx(2.5));
  CHECK_THROWS_AS(solve_branches(unit_spec(0.8), {0.5, 0.0}), DomainError);
}

TEST_CASE("area construction") {
  const BarrierSpec s = unit_spec(0.8);
  const AreaAction a = action_area(s, {0.5, 1.0}, 1.0);
  CHECK(a.q_plus - a.q_minus == doctest::Approx(a.action));
  CHECK(a.action == doctest::Approx(0.30666666666667).epsilon(1e-12));
  const AreaAction at_resonance = action_area(unit_spec(1 / std::sqrt(3.0)), {0.5, 1.0}, 1.0);
  CHECK(std::abs(at_resonance.action) < 1e-15);
  CHECK(at_resonance.q_minus > 0);
  CHECK(action_area(s, {0.0, 1.0}, 0.8).q_minus == 0.0);
}

TEST_CASE("step actions agree with the closed oracle") {
  Gen g(1);
  for (int i = 0; i < 300; ++i) {
    const double theta = g.uniform(0.2, 3), lambda = g.uniform(0.01, 0.99);
    const BarrierSpec s{g.uniform(0.1, 5), 0, g.uniform(0.2, 3), g.uniform(0.2, 3)};
    const double tau1 = g.uniform(0.05, 2.5) * theta;
    const double expect = oracle::step_action(s, lambda, theta, tau1);
    const double scale = oracle::static_action(s) + std::abs(expect);
    CHECK(std::abs(action_area(s, {lambda, theta}, tau1).action - expect) < 1e-12 * scale);
    CHECK(std::abs(action_quadrature(s, StepProfile{lambda, theta}, tau1) - expect) < 1e-10 * scale);
  }
}

TEST_CASE("resonance parameters") {
  Gen g(2);
  for (int i = 0; i < 200; ++i) {
    const BarrierSpec s{g.uniform(0.1, 5), g.uniform(-1, 0), g.uniform(0.2, 3), g.uniform(0.2, 3)};
    const double theta = g.uniform(0.1, 3), lambda = g.uniform(0, 1);
    const ResonanceParams r = resonance_params(s, theta, lambda);
    CHECK(r.E_R == doctest::Approx(oracle::resonance_energy(s, theta)));
    const double unit = s.V - r.E_R;
    if (lambda >= lambda_threshold)
      CHECK(r.E_ext == r.E_R);
    else
      CHECK(r.E_ext == doctest::Approx(r.E_R - unit * ((1 - lambda) * (1 - lambda) - 1.0 / 3)));
    CHECK(r.E_ext <= r.E_R);
    CHECK(s.V - r.E2 == doctest::Approx(3 * unit));
  }
  const BarrierSpec s{1.3, 0.2, 0.7, 1.9};
  BarrierSpec at = s;
  at.E = resonance_params(s, resonance_theta(s), 0.5).E_R;
  CHECK(rel_diff(at.E, s.E) < 1e-12);
}

TEST_CASE("closed action domain") {
  CHECK_THROWS_AS(action_closed(unit_spec(0.3), {0.5, 1.0}), DomainError);
  CHECK_THROWS_AS(action_closed(unit_spec(1.2), {0.5, 1.0}), DomainError);
  CHECK(action_closed(unit_spec(1 / std::sqrt(3.0)), {0.5, 1.0}) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("energy gain and exit point") {
  const BarrierSpec res = unit_spec(1 / std::sqrt(3.0));
  const BranchSet bs = solve_branches(res, {0.5, 1.0});
  const Branch& jump = bs.selected_branch();
  const EnergyGain g = energy_gain(res, {0.5, 1.0}, jump);
  CHECK(g.deltaE == doctest::Approx(-2 * res.V));
  CHECK(g.exit_energy == doctest::Approx(res.V - 3 * res.V));

  Gen gen(4);
  for (int i = 0; i < 100; ++i) {
    const BarrierSpec s{gen.uniform(0.1, 3), 0, gen.uniform(0.2, 3), gen.uniform(0.2, 3)};
    const StepProfile st{gen.uniform(0.05, 0.95), tau00(s) * gen.uniform(0.6, 1.8)};
    for (const Branch& b : solve_branches(s, st).branches) {
      CHECK(s.V - s.E0 * b.x1 == doctest::Approx(s.E + b.deltaE));
      CHECK(trajectory_triangular(s, st, b.tau1, 0.0) == doctest::Approx(b.x1));
      CHECK(std::abs(trajectory_triangular(s, st, b.tau1, b.tau1)) < 1e-12 * (1 + b.x1));
      if (b.kind != BranchKind::jump) CHECK(map_tau_to_x(s, st, b.tau1) == doctest::Approx(b.x1));
    }
  }
  Branch trivial;
  trivial.tau1 = 0.8;
  CHECK(energy_gain(unit_spec(0.8), {0.0, 1.0}, trivial).deltaE == doctest::Approx(0.0));
}

TEST_CASE("decomposition on the jump branch") {
  const BarrierSpec s = unit_spec(0.8);
  const BranchSet bs = solve_branches(s, {0.5, 1.0});
  CHECK(std::abs(action_decomposition_check(s, {0.5, 1.0}, bs.branches[1])) < 1e-12);
}

TEST_CASE("gradient and curvature") {
  const BarrierSpec s = unit_spec(0.8);
  const StepProfile st{0.5, 1.0};
  CHECK(action_gradient(s, st, 0.0) == doctest::Approx(-0.8));
  CHECK(action_gradient(s, st, 1.3) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(action_gradient(s, st, 1.0 + 1e-9) == doctest::Approx(0.5 - 0.8).epsilon(1e-8));

  const QuarticProfile none(Pulse{PulseShape::quartic_gaussian, 0.0, 2.0, 1.0}, 1.0);
  CHECK(action_curvature(s, none, 0.0) == doctest::Approx(1 / 0.8));
  CHECK_THROWS_AS(action_curvature(s, none, 0.8), SingularityError);
}

TEST_CASE("first correction") {
  CHECK(sigma1(0.5, 0.0) == doctest::Approx(0.5 * std::log(2.0) - 0.5));
  CHECK(sigma1(0.7, -1.0) == doctest::Approx(-0.5));
  CHECK_THROWS_AS(sigma1(1.0, 0.0), DomainError);
}

TEST_CASE("exit packet duration") {
  const BarrierSpec s = unit_spec(1.0);
  // (V - E_R) theta = theta^3 / 6 = 4/3 at theta = 2
  CHECK(exit_packet_duration(s, 2.0) == doctest::Approx(2.0));
  CHECK(exit_packet_duration(s, 1.0) == doctest::Approx(std::pow(8.0, 0.25)));
}

TEST_CASE("rate exponent versus theta") {
  const BarrierSpec s{1.0, 0.0, 0.1, 1.0};
  const double thR = resonance_theta(s), A0 = static_action(s);
  CHECK(probability_vs_theta(s, thR) == doctest::Approx(0.0));
  CHECK(probability_vs_theta(s, 0.5 * thR) == doctest::Approx(1.5 * std::sqrt(3.0) * A0));
  CHECK(probability_vs_theta(s, 2 * thR) == A0);
}

TEST_CASE("smooth quartic pulse selects the jump branch") {
  const BarrierSpec s = unit_spec(0.8);
  const Pulse p = quartic(s.E0, 0.5, 1.0, 400);
  const QuarticProfile prof(p, s.E0);
  const auto tau1 = smooth_exit_time(s, prof, 1.0);
  REQUIRE(tau1);
  CHECK(std::abs(*tau1 - 1.0) < 3 * prof.peak_width());
  CHECK(action_curvature(s, prof, *tau1) < 0);
  CHECK(action_quadrature(s, prof, *tau1) == doctest::Approx(0.30667).epsilon(0.02));
  const DecayResult d = decay(s, p);
  REQUIRE(d.branch);
  CHECK(d.branch->kind == BranchKind::jump);
  CHECK(d.W_exponent == doctest::Approx(-d.A));
}

TEST_CASE("decay falls back to the static channel above E_ext") {
  const BarrierSpec below = unit_spec(0.8);
  BarrierSpec above = below;
  above.E = oracle::resonance_energy(below, 1.0) + 0.05;
  const Pulse p = quartic(1.0, 0.6, 1.0);
  const DecayResult d = decay(above, p);
  CHECK_FALSE(d.branch);
  CHECK(d.A == d.A0);
  CHECK(d.W_exponent == -d.A0);
  const EscapeProbability e = escape_probability(above, p, 1.0, 0.0);
  CHECK(std::isinf(e.exponent_step));
  CHECK_FALSE(e.resonant_branch);
  const DecayResult off = decay(below, quartic(1.0, 0.0, 1.0));
  CHECK(off.A == off.A0);
}

TEST_CASE("semiclassical check ratios") {
  const BarrierSpec s{100.0, 0.0, 1.0, 1.0};
  const Pulse lg{PulseShape::lorentz_gaussian, 1e-3, std::sqrt(15.0) / 2.0, 2.0};
  const SemiclassicalCheck c = semiclassical_check(s, lg);
  CHECK(c.smooth_ratio == doctest::Approx(15.0 / 200.0));
  CHECK(c.ok);
}
