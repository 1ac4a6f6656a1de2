#include <cmath>
#include <numbers>

#include "doctest.h"
#include "eres/errors.hpp"
#include "eres/scenarios.hpp"
#include "eres/triangular.hpp"
#include "support.hpp"

using namespace eres;
using eres::testing::Gen;
using eres::testing::rel_diff;
using std::numbers::pi;

namespace {

constexpr double hbar_c_eV_cm = 1.973269804e-5;
constexpr double me_eV = 510998.95;

double gamow(double beta, double m, double E) { return pi * beta * std::sqrt(2 * m / E); }
double coulomb_thetaR(double beta, double m, double E) { return pi * beta * std::sqrt(27 * m / (8 * E * E * E)); }

}  // namespace

TEST_CASE("nd-144 preset") {
  const AlphaSpec s = nd144_preset();
  const double beta = 2 * 58 * constants::alpha;
  CHECK(s.beta == doctest::Approx(beta));
  CHECK(alpha_static_action(s) == doctest::Approx(gamow(beta, s.m, 1.9)));
  CHECK(alpha_static_action(s) == doctest::Approx(166.576).epsilon(1e-5));
  const AlphaResonance r = alpha_resonance(s);
  CHECK(r.theta_R == doctest::Approx(coulomb_thetaR(beta, s.m, 1.9)));
  CHECK(r.theta_R * constants::inverse_MeV_s == doctest::Approx(7.4963e-20).epsilon(1e-4));
  CHECK(std::abs(r.exit_ratio - 1.0 / 3) < 1e-12);
  const double eps_MeV2 = 4 * std::sqrt(2.0) / (9 * pi * pi) * 1.9 * 1.9 / beta * std::exp(-15.0);
  CHECK(alpha_threshold(s).eV_per_cm == doctest::Approx(eps_MeV2 / (hbar_c_eV_cm * 1e-6) * 1e6));
  CHECK(alpha_threshold(s).volts_per_cm == doctest::Approx(alpha_threshold(s).eV_per_cm / 2));
}

TEST_CASE("alpha rate exponent") {
  const AlphaSpec s = nd144_preset();
  const double thR = alpha_resonance(s).theta_R, A0 = alpha_static_action(s);
  CHECK(alpha_rate(s, thR) == doctest::Approx(0.0));
  CHECK(alpha_rate(s, 0.99 * thR) == doctest::Approx(0.01 * std::sqrt(3.0) * A0));
  CHECK(alpha_rate(s, 1.5 * thR) == A0);
}

TEST_CASE("alpha report") {
  const ScenarioReport r = alpha_report(nd144_preset());
  CHECK(r.at("A0").reference.value() == 177);
  CHECK(r.at("theta_R").unit == "s");
  CHECK(r.all_ok());
  CHECK_THROWS_AS(r.at("nonsense"), std::out_of_range);
  const ScenarioReport soft = alpha_report(soft_alpha_preset());
  CHECK(soft.at("A0").computed == doctest::Approx(7260.89).epsilon(1e-5));
  CHECK(soft.at("eps_T").computed == doctest::Approx(58.066).epsilon(1e-4));
  CHECK(soft.at("eps_T").reference.value() == 20);
  CHECK_FALSE(alpha_report(alpha_spec(58, 1.9, 12)).at("eps_T").reference);
  CHECK_THROWS_AS(alpha_report(AlphaSpec{0.0, 1.0}), DomainError);
}

TEST_CASE("alpha exit ratio for random specs") {
  Gen g(14);
  for (int i = 0; i < 100; ++i) {
    const AlphaSpec s = alpha_spec(g.integer(2, 100), g.log_uniform(1e-3, 10), g.uniform(4, 20));
    CHECK(std::abs(alpha_resonance(s).exit_ratio - 1.0 / 3) < 1e-12);
  }
}

TEST_CASE("hydrogen report") {
  const ScenarioReport r = hydrogen_report(2e7, 15);
  const double A0 = 4 * std::sqrt(2 * me_eV) * std::pow(13.6, 1.5) / (3 * hbar_c_eV_cm * 2e7);
  CHECK(r.at("A0").computed == doctest::Approx(A0).epsilon(1e-8));
  const double thR = std::sqrt(6 * me_eV * 13.6) / (constants::c_cm_per_s * 2e7);
  CHECK(r.at("theta_R").computed == doctest::Approx(thR).epsilon(1e-8));
  CHECK(r.at("delta_t_over_theta").computed == doctest::Approx(0.278221).epsilon(1e-5));
  CHECK(r.at("exit_gap_ratio").computed == doctest::Approx(3.0));
  CHECK(r.at("eps_T").computed == doctest::Approx(std::sqrt(2.0 / 3) * 2e7 * std::exp(-15.0) / pi));
  CHECK(r.all_ok());
  CHECK(hydrogen_report(2e7, 15, 13.6, 0.5).at("W_exponent").computed ==
        doctest::Approx(1.5 * std::sqrt(3.0) * A0).epsilon(1e-8));
}

TEST_CASE("metal emission") {
  const ScenarioReport r = metal_emission_report({});
  CHECK(r.at("current_density").computed ==
        doctest::Approx(constants::elementary_charge_C * 8.5e22 * 1.57e8 / r.at("A0").computed));
  MetalInputs fast;
  fast.period_s = 1e-15;
  CHECK_FALSE(metal_emission_report(fast).all_ok());
}

TEST_CASE("over-barrier competitor") {
  const BarrierSpec s{1.0, 0.0, 1.0, 1.0};
  const OverBarrier o = overbarrier_exponent(s, 10.0, 0.4, 1.0);
  CHECK(o.omega_opt_exact == doctest::Approx(3.2));
  CHECK(std::abs(o.omega_opt - 3.2) < 1e-6 * 3.2);
  CHECK(o.second_min == doctest::Approx(20.0));
  CHECK(o.second == doctest::Approx(2 * (1.0 / (4 * 0.16) + 16.0)));
  CHECK(o.first == 20.0);

  Gen g(9);
  for (int i = 0; i < 100; ++i) {
    const BarrierSpec b{g.uniform(0.5, 5), 0.0, g.uniform(0.1, 2), g.uniform(0.5, 2)};
    const double theta = resonance_theta(b), W = std::sqrt(g.uniform(4, 20)) / theta;
    const OverBarrier ob = overbarrier_exponent(b, theta, W, 1.0);
    CHECK(rel_diff(ob.second_min, 2 * theta * b.V) < 1e-9);
    CHECK(ob.tunneling_action < ob.exponent);
    CHECK(ob.tunneling_wins);
  }
}

TEST_CASE("friction bound") {
  const DissipationBound d = dissipation_bound(2.0, 0.25, 15.0, 100.0);
  CHECK(d.gamma_c == 0.5);
  CHECK(d.ok);
  CHECK(d.margin == 2.0);
  CHECK(d.signal_ratio == doctest::Approx(0.075));
  CHECK(d.chain_ok);
  CHECK_FALSE(dissipation_bound(2.0, 0.6, 15.0, 100.0).ok);
  CHECK(std::isinf(dissipation_bound(2.0, 0.0, 15.0, 100.0).margin));
  CHECK_THROWS_AS(dissipation_bound(0.0, 0.1, 15.0, 1.0), DomainError);
}
