#pragma once

#include <complex>
#include <functional>
#include <string_view>

namespace eres {

using cplx = std::complex<double>;

enum class PulseShape {
  quartic_gaussian,  // -eps * exp(-W^4 t^4 - 2 W^4 th^2 t^2), even in t
  lorentz_gaussian,  // -eps * t th / (t^2 + th^2) * exp(-W^2 t^2), poles at t = +-i th
  odd_gaussian,      // -eps * (t / th) * exp(-W^2 t^2), no complex-time pole
};

std::string_view to_string(PulseShape s);
PulseShape pulse_shape_from_string(std::string_view name);

/// Non-stationary signal with amplitude `amplitude` (energy per length),
/// inverse width `omega` and pole/width time `theta`.
struct Pulse {
  PulseShape shape = PulseShape::lorentz_gaussian;
  double amplitude = 0.0;
  double omega = 1.0;
  double theta = 1.0;

  void validate() const;
  /// Omega^2 theta^2, the instant-signal parameter.
  double omega2theta2() const { return omega * omega * theta * theta; }
};

double evaluate(const Pulse& p, double t);
cplx evaluate(const Pulse& p, cplx t);

/// h(t) = E(t) / E0.
std::function<double(double)> reduced_profile(const Pulse& p, double E0);

/// Instant-signal limit of the quartic-gaussian profile:
/// phi(tau) = tau - lambda * theta * Theta(tau - theta), with Theta(0) = 0.
struct StepProfile {
  double lambda = 0.0;
  double theta = 1.0;

  double phi(double tau) const;
  /// H(tau) = integral_0^tau h.
  double integral_h(double tau) const;
  /// integral_0^tau xi h(xi) d xi.
  double moment_h(double tau) const;
};

/// The quartic-gaussian pulse continued to the imaginary time axis t = i xi,
/// where h(xi) = -(eps/E0) exp(W^4 th^4 - W^4 (xi^2 - th^2)^2) is real and
/// sharply peaked at xi = theta.
class QuarticProfile {
 public:
  QuarticProfile(const Pulse& p, double E0);

  double h(double xi) const;
  double phi(double tau) const;
  double integral_h(double tau) const;
  double moment_h(double tau) const;
  /// integral_0^tau d xi integral_0^xi h.
  double double_integral_h(double tau) const;

  double theta() const { return theta_; }
  double omega() const { return omega_; }
  /// Half-width of the peak of h around theta.
  double peak_width() const;

 private:
  double quad(const std::function<double(double)>& f, double tau) const;

  double log_scale_;  // log(eps/E0) + W^4 th^4, or -inf for a zero pulse
  double omega4_;
  double theta_;
  double omega_;
};

/// phi(tau) = tau + integral_0^tau h for a quartic-gaussian pulse, by
/// adaptive quadrature along the imaginary axis (relative tolerance 1e-10).
double phi(const Pulse& p, double tau, double E0);

struct EffectiveAmplitude {
  double lambda = 0.0;
  bool regime_ok = true;  // W^4 th^4 >= 4
};

/// lambda = sqrt(pi) / (2 W^2 th^2) * (eps / E0) * exp(W^4 th^4).
EffectiveAmplitude effective_amplitude(const Pulse& p, double E0);

/// Inverse of effective_amplitude: eps / E0 giving `lambda` at (omega, theta).
double relative_amplitude_for_lambda(double lambda, double omega, double theta);

/// |integral_C E(t) dt| around the pole at t = i theta of the lorentz-gaussian:
/// pi * theta * eps * exp(W^2 th^2).
double contour_kick(const Pulse& p);

/// Whether W^2 th^2 >= 4 (lorentz/odd) or W^4 th^4 >= 4 (quartic).
bool instant_signal_regime(const Pulse& p);

struct FourierComponent {
  cplx value;
  cplx pole_term;
  cplx saddle_term;
  bool numerical = false;  // true inside the window around w = 2 W^2 th
};

/// E_w = integral E(t) e^{i w t} dt for the lorentz-gaussian pulse from its
/// pole and saddle contributions. Within 5% of w = 2 W^2 th, where the
/// asymptotic saddle term has a spurious pole, the value comes from
/// fourier_component_numeric instead.
FourierComponent fourier_component(const Pulse& p, double w);

/// Exact E_w: quadrature along a line parallel to the real axis through (or
/// near) the saddle, plus the residue at i theta when the line passes above it.
cplx fourier_component_numeric(const Pulse& p, double w);

}  // namespace eres
