#include <cmath>
#include <numbers>

#include "doctest.h"
#include "eres/errors.hpp"
#include "eres/numerics.hpp"
#include "eres/pulses.hpp"
#include "support.hpp"

using namespace eres;
using eres::testing::Gen;
using eres::testing::rel_diff;
using std::numbers::pi;

TEST_CASE("shape names") {
  for (PulseShape s : {PulseShape::quartic_gaussian, PulseShape::lorentz_gaussian, PulseShape::odd_gaussian})
    CHECK(pulse_shape_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(pulse_shape_from_string("square"), DomainError);
  CHECK_THROWS_AS((Pulse{PulseShape::odd_gaussian, 1.0, 0.0, 1.0}.validate()), DomainError);
}

TEST_CASE("real-time values") {
  const Pulse lg{PulseShape::lorentz_gaussian, 2.0, 0.5, 1.0};
  CHECK(evaluate(lg, 0.0) == 0.0);
  CHECK(evaluate(lg, 1.0) == doctest::Approx(-2.0 * 0.5 * std::exp(-0.25)));
  CHECK(evaluate(lg, -1.0) == doctest::Approx(-evaluate(lg, 1.0)));
  const Pulse q{PulseShape::quartic_gaussian, 2.0, 1.0, 1.0};
  CHECK(evaluate(q, 0.0) == -2.0);
  CHECK(evaluate(q, 0.7) == doctest::Approx(evaluate(q, -0.7)));
}

TEST_CASE("quartic profile is the pulse continued to t = i xi") {
  Gen g(21);
  for (int i = 0; i < 50; ++i) {
    const double th = g.log_uniform(0.1, 10), W = g.uniform(1.0, 2.5) / th, E0 = g.log_uniform(0.1, 10);
    const Pulse p{PulseShape::quartic_gaussian, E0 * g.log_uniform(1e-8, 1e-3), W, th};
    const QuarticProfile prof(p, E0);
    const double xi = g.uniform(0.0, 1.5 * th);
    CHECK(rel_diff(prof.h(xi), std::real(evaluate(p, cplx(0, xi))) / E0) < 1e-12);
  }
}

TEST_CASE("step profile") {
  const StepProfile s{0.5, 1.0};
  CHECK(s.phi(0.8) == 0.8);
  CHECK(s.phi(1.0) == 1.0);
  CHECK(s.phi(1.3) == doctest::Approx(0.8));
  CHECK(s.moment_h(2.0) == doctest::Approx(-0.5));
}

TEST_CASE("effective amplitude tends to the integrated kick") {
  CHECK(relative_amplitude_for_lambda(0.5, 2.0, 1.0) == doctest::Approx(2.0 / std::sqrt(pi) * std::exp(-16.0)));
  const double frozen[] = {0.50632524, 0.50094797, 0.50023502};
  int k = 0;
  for (double x4 : {16.0, 100.0, 400.0}) {
    const double W = std::pow(x4, 0.25);
    Pulse p{PulseShape::quartic_gaussian, relative_amplitude_for_lambda(0.5, W, 1.0), W, 1.0};
    CHECK(effective_amplitude(p, 1.0).lambda == doctest::Approx(0.5));
    CHECK(effective_amplitude(p, 1.0).regime_ok);
    const double lambda_quad = -QuarticProfile(p, 1.0).integral_h(2.0);
    CHECK(lambda_quad == doctest::Approx(frozen[k++]).epsilon(1e-7));
    CHECK(std::abs(lambda_quad / 0.5 - 1) < 1.5 / x4);
  }
}

TEST_CASE("contour kick equals the residue integral") {
  for (double x : {4.0, 9.0, 15.0}) {
    const Pulse p{PulseShape::lorentz_gaussian, 1e-3, std::sqrt(x), 1.0};
    const double r = 0.3;
    const auto loop = numerics::integrate(
        [&](double a) {
          const cplx t = cplx(0, 1) + r * std::exp(cplx(0, a));
          return evaluate(p, t) * cplx(0, 1) * r * std::exp(cplx(0, a));
        },
        0.0, 2 * pi);
    CHECK(rel_diff(std::abs(loop.value), contour_kick(p)) < 1e-10);
  }
  CHECK_THROWS_AS(contour_kick(Pulse{PulseShape::odd_gaussian, 1, 1, 1}), DomainError);
}

TEST_CASE("fourier component") {
  const Pulse p{PulseShape::lorentz_gaussian, 1.0, std::sqrt(15.0), 1.0};
  for (double w : {2.0, 10.0}) {
    const auto direct = numerics::integrate(
        [&](double t) { return evaluate(p, t) * std::exp(cplx(0, w * t)); }, -3.0, 3.0, {}, {0.0});
    CHECK(std::abs(fourier_component_numeric(p, w) - direct.value) < 1e-10 * std::abs(direct.value));
  }
  const auto near = fourier_component(p, 30.0);
  CHECK(near.numerical);
  const auto far = fourier_component(p, 60.0);
  CHECK_FALSE(far.numerical);
  CHECK(std::abs(far.value - fourier_component_numeric(p, 60.0)) < 1e-6 * std::abs(far.value));
  CHECK(std::abs(far.pole_term) > 0.0);
  CHECK(std::abs(fourier_component(p, 10.0).pole_term) == 0.0);
}

TEST_CASE("instant signal regime") {
  CHECK(instant_signal_regime(Pulse{PulseShape::lorentz_gaussian, 1, 2.0, 1}));
  CHECK_FALSE(instant_signal_regime(Pulse{PulseShape::lorentz_gaussian, 1, 1.9, 1}));
  CHECK(instant_signal_regime(Pulse{PulseShape::quartic_gaussian, 1, std::sqrt(2.0), 1}));
}
