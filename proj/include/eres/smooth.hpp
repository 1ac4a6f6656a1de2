#pragma once

// Instant-signal tunneling through a general smooth barrier. The particle
// leaves the outer turning point x1 (V(x1) = E + dE) at tau = 0, reaches the
// well edge x0 at tau = theta, and is kicked there by the pulse.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eres/numerics.hpp"
#include "eres/pulses.hpp"
#include "eres/quantities.hpp"

namespace eres {

enum class PotentialKind { triangular, coulomb, tabulated };

std::string_view to_string(PotentialKind k);

class PotentialModel {
 public:
  /// V(x) = V - E0 x on x >= 0, well edge at x0 = 0.
  static PotentialModel triangular(double V, double E0, double m);
  /// V(x) = beta / x on x > 0, well edge at x0 = 0.
  static PotentialModel coulomb(double beta, double m);
  /// Monotone cubic through the samples. The well edge defaults to the
  /// innermost root of V = E, or to the first sample when there is none.
  static PotentialModel tabulated(std::vector<double> x, std::vector<double> v, double m,
                                  std::optional<double> inner_edge = std::nullopt);

  PotentialKind kind() const { return kind_; }
  double mass() const { return m_; }
  double domain_lo() const { return lo_; }
  double domain_hi() const { return hi_; }

  double V(double x) const;
  double dV(double x) const;
  /// V(x + dx) - V(x), accurate for small dx.
  double rise(double x, double dx) const;
  numerics::cplx V(numerics::cplx x) const;
  numerics::cplx dV(numerics::cplx x) const;

  /// Highest energy below which the barrier still has an outer turning point.
  double top() const;
  /// Inner matching point x0 for a level at energy E.
  double inner_edge(double E) const;

  double barrier_height() const { return a_; }  // triangular V
  double field() const { return b_; }            // triangular E0
  double beta() const { return a_; }             // coulomb beta
  /// Sample abscissae of a tabulated model, empty otherwise.
  std::span<const double> knots() const;

 private:
  PotentialKind kind_ = PotentialKind::triangular;
  double m_ = 1.0;
  double a_ = 0.0, b_ = 0.0;
  double lo_ = 0.0, hi_ = 0.0;
  std::optional<double> inner_;
  std::optional<numerics::MonotoneCubic> table_;
};

struct TabulatedFile {
  std::vector<double> x;
  std::vector<double> v;
  UnitSystem units = UnitSystem::atomic;
};

/// Two numeric columns (x, V), '#' comments, and a `units: atomic|nuclear`
/// header line (optionally behind '#').
TabulatedFile read_tabulated_file(const std::string& path);
TabulatedFile parse_tabulated(std::string_view text);

/// Roots of V(x) = level inside the domain, ascending.
std::vector<double> turning_points(const PotentialModel& pot, double level);

/// Outer turning point: the largest root of V(x) = level.
double outer_turning_point(const PotentialModel& pot, double level);

/// theta = sqrt(m/2) integral_{x0}^{x1} dx / sqrt(V - E - dE).
double theta_of_deltaE(const PotentialModel& pot, double E, double dE);

struct DeltaERange {
  double theta_min = 0.0;  // at dE = 0
  double theta_max = 0.0;  // at the most negative admissible dE
  double dE_min = 0.0;
};

DeltaERange attainable_theta(const PotentialModel& pot, double E);

double deltaE_of_theta(const PotentialModel& pot, double E, double theta);

/// A = 2 sqrt(2m) integral sqrt(V - E - dE) dx + 2 theta dE, dE = dE(E, theta).
/// Valid only at the extremal energy of the applied field.
double action_smooth(const PotentialModel& pot, double E, double theta);

/// Root of A(E, theta) = 0.
double resonance_energy_smooth(const PotentialModel& pot, double theta);

/// pi theta eps_ext exp(W^2 th^2) = sqrt(-2m dE(E, theta)).
double extremal_field(const PotentialModel& pot, double E, double theta, double omega);

/// eps_ext at E = E_R(theta).
double threshold_field(const PotentialModel& pot, double theta, double omega);

/// Energy at which the field amplitude `eps` is extremal, capped at E_R.
double extremal_energy(const PotentialModel& pot, double theta, double omega, double eps);

/// dE = K v + K^2 / 2m for a kick of size K applied at imaginary velocity v.
double deltaE_from_kick(double kick, double velocity, double m);

struct ContourOptions {
  std::optional<double> deltaE;  // default: deltaE_of_theta(E, theta)
  double loop_radius = 0.0;      // default: 0.02 / (W^2 th), at most theta / 2
  double segment3_length = -1.0; // default: theta
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
};

struct TrajectorySample {
  int segment = 1;
  double s = 0.0;  // contour parameter: tau, loop angle, real-time offset
  numerics::cplx t;
  numerics::cplx x;
  numerics::cplx velocity;  // dx/dt
  numerics::cplx energy;    // m/2 (dx/dt)^2 + V(x)
};

struct EuclideanTrajectory {
  std::vector<TrajectorySample> samples;
  double deltaE = 0.0;                // energy offset of segment 1
  numerics::cplx deltaE_measured;     // minus the work of the field around the loop
  double deltaE_formula = 0.0;        // kick formula with the segment-1 velocity
  numerics::cplx impulse;             // integral of the field around the loop
  double kick_expected = 0.0;         // pi theta eps exp(W^2 th^2)
  double velocity_theta = 0.0;        // dx/dtau at tau = theta on segment 1
  double x_theta = 0.0;
  double A_measured = 0.0;            // segment-1 Euclidean action
  double loop_action = 0.0;           // -2 Im of the loop contribution to S
  numerics::cplx coordinate_jump;     // x after the loop minus x before
  numerics::cplx energy3;
  double energy_drift1 = 0.0;
  double energy_drift3 = 0.0;
};

/// Integrates m x'' + V'(x) = E(t) along: (1) t = i tau, tau in [0, theta],
/// free, from x1 at rest; (2) a counterclockwise circle around the pole at
/// i theta, starting at i(theta - r), with the pulse on; (3) a horizontal
/// line to the left, free. Requires a lorentz-gaussian pulse.
EuclideanTrajectory integrate_euclidean(const PotentialModel& pot, const Pulse& pulse, double E,
                                        double theta, const ContourOptions& opt = {});

struct TriangularLimitReport {
  double A_smooth = 0.0, A_triangular = 0.0;
  double E_R_smooth = 0.0, E_R_triangular = 0.0;
  double eps_T_smooth = 0.0, eps_T_triangular = 0.0;
  double E_ext_smooth = 0.0, E_ext_triangular = 0.0;
  double max_relative_deviation = 0.0;
};

/// Cross-check against the closed triangular forms. Energies are compared
/// relative to the barrier scale V - E and the action relative to A0.
TriangularLimitReport triangular_limit_check(const BarrierSpec& spec, double theta, double omega);

}  // namespace eres
