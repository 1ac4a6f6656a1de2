#include "eres/pulses.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "eres/errors.hpp"
#include "eres/numerics.hpp"

namespace eres {

using std::numbers::pi;

std::string_view to_string(PulseShape s) {
  switch (s) {
    case PulseShape::quartic_gaussian:
      return "quartic-gaussian";
    case PulseShape::lorentz_gaussian:
      return "lorentz-gaussian";
    case PulseShape::odd_gaussian:
      return "odd-gaussian";
  }
  return "?";
}

PulseShape pulse_shape_from_string(std::string_view name) {
  if (name == "quartic-gaussian" || name == "quartic") return PulseShape::quartic_gaussian;
  if (name == "lorentz-gaussian" || name == "lorentz") return PulseShape::lorentz_gaussian;
  if (name == "odd-gaussian" || name == "odd") return PulseShape::odd_gaussian;
  throw DomainError("unknown pulse shape '" + std::string(name) + "'");
}

void Pulse::validate() const {
  if (!(amplitude >= 0.0)) throw DomainError("pulse amplitude must be non-negative");
  if (!(omega > 0.0)) throw DomainError("pulse omega must be positive");
  if (!(theta > 0.0)) throw DomainError("pulse theta must be positive");
}

namespace {

template <class T>
T evaluate_impl(const Pulse& p, T t) {
  const double w2 = p.omega * p.omega;
  switch (p.shape) {
    case PulseShape::quartic_gaussian: {
      const T t2 = t * t;
      return -p.amplitude * std::exp(-w2 * w2 * t2 * t2 - 2.0 * w2 * w2 * p.theta * p.theta * t2);
    }
    case PulseShape::lorentz_gaussian:
      return -p.amplitude * t * p.theta / (t * t + p.theta * p.theta) * std::exp(-w2 * t * t);
    case PulseShape::odd_gaussian:
      return -p.amplitude * (t / p.theta) * std::exp(-w2 * t * t);
  }
  return T{};
}

}  // namespace

double evaluate(const Pulse& p, double t) { return evaluate_impl(p, t); }
cplx evaluate(const Pulse& p, cplx t) { return evaluate_impl(p, t); }

std::function<double(double)> reduced_profile(const Pulse& p, double E0) {
  if (!(E0 > 0.0)) throw DomainError("static field E0 must be positive");
  return [p, E0](double t) { return evaluate(p, t) / E0; };
}

double StepProfile::phi(double tau) const { return tau + integral_h(tau); }

double StepProfile::integral_h(double tau) const { return tau > theta ? -lambda * theta : 0.0; }

double StepProfile::moment_h(double tau) const { return theta * integral_h(tau); }

QuarticProfile::QuarticProfile(const Pulse& p, double E0)
    : omega4_(std::pow(p.omega, 4)), theta_(p.theta), omega_(p.omega) {
  if (p.shape != PulseShape::quartic_gaussian)
    throw DomainError("imaginary-axis profile is defined for the quartic-gaussian pulse only");
  p.validate();
  if (!(E0 > 0.0)) throw DomainError("static field E0 must be positive");
  log_scale_ = p.amplitude > 0.0
                   ? std::log(p.amplitude / E0) + omega4_ * std::pow(theta_, 4)
                   : -std::numeric_limits<double>::infinity();
}

double QuarticProfile::h(double xi) const {
  if (std::isinf(log_scale_)) return 0.0;
  const double d = xi * xi - theta_ * theta_;
  return -std::exp(log_scale_ - omega4_ * d * d);
}

double QuarticProfile::peak_width() const { return 1.0 / (2.0 * omega_ * omega_ * theta_); }

double QuarticProfile::quad(const std::function<double(double)>& f, double tau) const {
  if (std::isinf(log_scale_) || tau == 0.0) return 0.0;
  std::vector<double> breaks;
  const double w = peak_width();
  for (int k = -6; k <= 6; ++k) breaks.push_back(theta_ + k * w);
  numerics::QuadOptions opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-300;
  return numerics::integrate(f, 0.0, tau, opt, breaks).value;
}

double QuarticProfile::integral_h(double tau) const {
  return quad([this](double xi) { return h(xi); }, tau);
}

double QuarticProfile::moment_h(double tau) const {
  return quad([this](double xi) { return xi * h(xi); }, tau);
}

double QuarticProfile::double_integral_h(double tau) const {
  // integral_0^tau (tau - xi) h(xi) d xi
  return tau * integral_h(tau) - moment_h(tau);
}

double QuarticProfile::phi(double tau) const { return tau + integral_h(tau); }

double phi(const Pulse& p, double tau, double E0) {
  if (tau < 0.0) throw DomainError("phi is defined for tau >= 0");
  return QuarticProfile(p, E0).phi(tau);
}

EffectiveAmplitude effective_amplitude(const Pulse& p, double E0) {
  if (p.shape != PulseShape::quartic_gaussian)
    throw DomainError("effective amplitude is defined for the quartic-gaussian pulse only");
  p.validate();
  const double w2t2 = p.omega2theta2();
  EffectiveAmplitude out;
  out.regime_ok = w2t2 * w2t2 >= 4.0;
  if (p.amplitude == 0.0) return out;
  out.lambda = std::sqrt(pi) / (2.0 * w2t2) * std::exp(std::log(p.amplitude / E0) + w2t2 * w2t2);
  return out;
}

double relative_amplitude_for_lambda(double lambda, double omega, double theta) {
  const double w2t2 = omega * omega * theta * theta;
  return lambda * 2.0 * w2t2 / std::sqrt(pi) * std::exp(-w2t2 * w2t2);
}

double contour_kick(const Pulse& p) {
  if (p.shape != PulseShape::lorentz_gaussian)
    throw DomainError("contour kick is defined for the lorentz-gaussian pulse only");
  p.validate();
  if (p.amplitude == 0.0) return 0.0;
  return pi * p.theta * p.amplitude * std::exp(p.omega2theta2());
}

bool instant_signal_regime(const Pulse& p) {
  const double x = p.omega2theta2();
  return p.shape == PulseShape::quartic_gaussian ? x * x >= 4.0 : x >= 4.0;
}

cplx fourier_component_numeric(const Pulse& p, double w) {
  if (p.shape != PulseShape::lorentz_gaussian)
    throw DomainError("fourier component is implemented for the lorentz-gaussian pulse");
  p.validate();
  if (!(w > 0.0)) throw DomainError("frequency must be positive");
  const double w2 = p.omega * p.omega;
  const double th = p.theta;

  // Line Im t = c; through the saddle unless that runs too close to the pole.
  double c = w / (2.0 * w2);
  const double clearance = std::min(0.5 * th, 2.0 / p.omega);
  if (std::abs(c - th) < clearance) c = th - clearance;

  const double log_mag = w2 * c * c - w * c;
  const double freq = w - 2.0 * w2 * c;
  auto integrand = [&](double s) {
    const cplx t(s, c);
    const cplx rational = t * th / (t * t + th * th);
    return -p.amplitude * rational * std::exp(cplx(-w2 * s * s + log_mag, freq * s));
  };
  const double span = 9.0 / p.omega;
  numerics::QuadOptions opt;
  opt.rel_tol = 1e-11;
  opt.abs_tol = 1e-14 * p.amplitude * std::exp(log_mag) / p.omega;
  cplx value = numerics::integrate(integrand, -span, span, opt, {0.0}).value;
  if (c > th) value += cplx(0.0, -pi * th * p.amplitude * std::exp(w2 * th * th - w * th));
  return value;
}

FourierComponent fourier_component(const Pulse& p, double w) {
  if (p.shape != PulseShape::lorentz_gaussian)
    throw DomainError("fourier component is implemented for the lorentz-gaussian pulse");
  p.validate();
  if (!(w > 0.0)) throw DomainError("frequency must be positive");
  const double w2 = p.omega * p.omega;
  const double th = p.theta;
  const double eps = p.amplitude;

  FourierComponent out;
  if (w / (2.0 * w2) > th)
    out.pole_term = cplx(0.0, -pi * th * eps * std::exp(w2 * th * th - w * th));
  const double coalescence = 2.0 * w2 * th;
  if (std::abs(w - coalescence) < 0.05 * coalescence) {
    out.numerical = true;
    out.value = fourier_component_numeric(p, w);
    out.saddle_term = out.value - out.pole_term;
    return out;
  }
  out.saddle_term = cplx(0.0, 2.0 * std::sqrt(pi) * eps * w * th * p.omega /
                                  (w * w - coalescence * coalescence) *
                                  std::exp(-w * w / (4.0 * w2)));
  out.value = out.pole_term + out.saddle_term;
  return out;
}

}  // namespace eres
