#pragma once

// delta-well plus triangular barrier V(x) = V - E0 x driven by a symmetric
// pulse. Imaginary time tau runs from the exit point (tau = 0) to the well
// (tau = tau1); the pulse peaks at tau = theta.

#include <optional>
#include <string_view>
#include <vector>

#include "eres/pulses.hpp"
#include "eres/quantities.hpp"

namespace eres {

enum class BranchKind { pre_kick, jump, post_kick };

std::string_view to_string(BranchKind k);

struct Branch {
  double tau1 = 0.0;
  BranchKind kind = BranchKind::pre_kick;
  double action = 0.0;
  double deltaE = 0.0;
  bool stable = false;
  bool escapes = true;  // false for kicked branches when E > E_ext
  double x1 = 0.0;
  double curvature = 0.0;     // i d^2S/dx^2 on the smoothed profile, 0 if not resolved
  bool curvature_resolved = false;
};

struct BranchSet {
  std::vector<Branch> branches;
  std::optional<double> tau2;
  std::optional<std::size_t> selected;

  /// Throws NoStableBranch when nothing is stable.
  const Branch& selected_branch() const;
};

double tau00(const BarrierSpec& spec);
double static_action(const BarrierSpec& spec);

/// Coordinate reached at imaginary time tau0 from the entry x = 0.
double map_tau_to_x(const BarrierSpec& spec, const StepProfile& step, double tau0);
double map_tau_to_x(const BarrierSpec& spec, const QuarticProfile& prof, double tau0);

/// Exit coordinate of a step-profile branch, V - E0 x1 = E + deltaE.
double exit_coordinate(const BarrierSpec& spec, const StepProfile& step, double tau1);

/// i dS/dx = E0 [phi(tau0) - tau00] at the x corresponding to tau0.
double action_gradient(const BarrierSpec& spec, const StepProfile& step, double tau0);
double action_gradient(const BarrierSpec& spec, const QuarticProfile& prof, double tau0);
/// Same, but takes the coordinate and solves for tau0 on [0, tau_max].
double action_gradient_at_x(const BarrierSpec& spec, const QuarticProfile& prof, double x,
                            double tau_max);

/// i d^2S/dx^2 = m (1 + h) / (tau00 - tau0 (1 + h)). Throws SingularityError
/// where the denominator vanishes.
double action_curvature(const BarrierSpec& spec, const QuarticProfile& prof, double tau0);

/// Effective pulse used to classify step-profile branch stability:
/// quartic-gaussian with W^4 th^4 = 16 carrying the same lambda.
Pulse stability_pulse(const BarrierSpec& spec, const StepProfile& step);

BranchSet solve_branches(const BarrierSpec& spec, const StepProfile& step);

/// A = (E0^2/m) [tau1 tau00^2 - integral_0^tau1 phi^2], by adaptive quadrature.
double action_quadrature(const BarrierSpec& spec, const StepProfile& step, double tau1);
double action_quadrature(const BarrierSpec& spec, const QuarticProfile& prof, double tau1);

struct AreaAction {
  double q_plus = 0.0;
  double q_minus = 0.0;
  double action = 0.0;
};

/// (E0^2/m)(Q+ - Q-) from closed parabola-segment areas.
AreaAction action_area(const BarrierSpec& spec, const StepProfile& step, double tau1);

/// 2 (E_R - E) theta. Throws DomainError outside the jump-branch regions.
double action_closed(const BarrierSpec& spec, const StepProfile& step);

struct ResonanceParams {
  double E_R = 0.0;
  double lambda_T = 0.0;
  double E_ext = 0.0;
  double E1 = 0.0;  // V - E1 = (V - E2)(1 - lambda)^2
  double E2 = 0.0;  // V - E2 = theta^2 E0^2 / 2m
};

inline constexpr double lambda_threshold = 0.42264973081037423;  // 1 - 1/sqrt(3)

ResonanceParams resonance_params(const BarrierSpec& spec, double theta, double lambda);
double resonance_theta(const BarrierSpec& spec);

struct EnergyGain {
  double deltaE = 0.0;
  double exit_energy = 0.0;
};

EnergyGain energy_gain(const BarrierSpec& spec, const StepProfile& step, const Branch& branch);
EnergyGain energy_gain(const BarrierSpec& spec, const QuarticProfile& prof, double tau1);

/// A - [A0(E + deltaE) + 2 theta deltaE].
double action_decomposition_check(const BarrierSpec& spec, const StepProfile& step,
                                  const Branch& branch);

double exit_packet_duration(const BarrierSpec& spec, double theta);

/// i sigma1 = -ln sqrt(1 - (tau1/tau00)(1 + h(tau1))) - 1/2.
double sigma1(const BarrierSpec& spec, const QuarticProfile& prof, double tau1);
double sigma1(double tau1_over_tau00, double h_at_tau1);

/// Root of phi(tau) = tau00 on the smooth profile closest to `guess`.
std::optional<double> smooth_exit_time(const BarrierSpec& spec, const QuarticProfile& prof,
                                       double guess);

struct EscapeProbability {
  double W = 0.0;
  double static_term = 0.0;
  double resonant_term = 0.0;
  double prefactor = 0.0;
  double action = 0.0;
  double static_exponent = 0.0;
  double exponent_step = 0.0;       // 2 (E_R - E) theta, infinite above E_ext
  double exponent_theta = 0.0;      // 3 sqrt3 A0 (theta_R - theta) / theta_R
  bool arrived = false;
  bool resonant_branch = false;
  bool exponent_small_flag = false;  // A < 3
};

EscapeProbability escape_probability(const BarrierSpec& spec, const Pulse& pulse, double t,
                                     double x_det);

double probability_vs_theta(const BarrierSpec& spec, double theta);

struct SemiclassicalCheck {
  bool ok = false;
  double triangular_ratio = 0.0;
  double smooth_ratio = 0.0;
};

SemiclassicalCheck semiclassical_check(const BarrierSpec& spec, const Pulse& pulse);

/// Euclidean trajectory x(tau), 0 <= tau <= tau1.
double trajectory_triangular(const BarrierSpec& spec, const StepProfile& step, double tau1,
                             double tau);
/// dx/dtau; at tau = tau1 the value after the kick, -sqrt(2(V-E)/m).
double trajectory_velocity(const BarrierSpec& spec, const StepProfile& step, double tau1,
                           double tau);

struct DecayResult {
  double A = 0.0;
  double A0 = 0.0;
  double deltaE = 0.0;
  double exit_energy = 0.0;
  double delta_t = 0.0;
  double sigma1 = 0.0;
  double W_exponent = 0.0;
  double prefactor = 0.0;
  std::optional<Branch> branch;
};

/// Falls back to the static result when no stable branch exists.
DecayResult decay(const BarrierSpec& spec, const Pulse& pulse);

}  // namespace eres
