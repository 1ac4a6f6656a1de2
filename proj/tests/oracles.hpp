#pragma once

// Closed forms written out independently of the library for cross-checks.

#include <cmath>
#include <numbers>

#include "eres/quantities.hpp"

namespace eres::oracle {

inline double tau00(const BarrierSpec& s) { return std::sqrt(2 * s.m * (s.V - s.E)) / s.E0; }

/// (E0^2/m) [tau1 tau00^2 - integral_0^tau1 phi^2] for phi = tau - lambda theta Theta(tau - theta).
inline double step_action(const BarrierSpec& s, double lambda, double theta, double tau1) {
  const double t00 = oracle::tau00(s);
  double integral = 0;
  if (tau1 <= theta) {
    integral = tau1 * tau1 * tau1 / 3;
  } else {
    const double a = (1 - lambda) * theta, b = tau1 - lambda * theta;
    integral = theta * theta * theta / 3 + (b * b * b - a * a * a) / 3;
  }
  return s.E0 * s.E0 / s.m * (tau1 * t00 * t00 - integral);
}

inline double resonance_energy(const BarrierSpec& s, double theta) {
  return s.V - theta * theta * s.E0 * s.E0 / (6 * s.m);
}

inline double static_action(const BarrierSpec& s) { return 4.0 / 3.0 * (s.V - s.E) * oracle::tau00(s); }

/// Coulomb tail beta/x from the well edge: theta(E') with E' = E + dE, and the action.
inline double coulomb_theta(double beta, double m, double exit_energy) {
  return std::numbers::pi / 4 * beta * std::sqrt(2 * m) / std::pow(exit_energy, 1.5);
}
inline double coulomb_action(double beta, double m, double E, double theta) {
  return std::pow(3 * std::numbers::pi * beta * std::sqrt(3 * m * theta), 2.0 / 3) - 2 * theta * E;
}

}  // namespace eres::oracle
