#include "eres/triangular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "eres/errors.hpp"
#include "eres/numerics.hpp"

namespace eres {

namespace {

using std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

double scale_action(const BarrierSpec& s) { return s.E0 * s.E0 / s.m; }

// Roots of phi(tau) = target on [0, tau_max]: cumulative integral of h on a
// fine grid to locate sign changes, then refined with the full quadrature.
std::vector<double> phi_roots(const QuarticProfile& prof, double target, double tau_max) {
  const double w = prof.peak_width();
  const int n = std::clamp(static_cast<int>(std::ceil(tau_max / (w / 20.0))), 400, 20000);
  const double dt = tau_max / n;
  numerics::QuadOptions opt;
  opt.rel_tol = 1e-9;
  opt.abs_tol = 1e-300;

  std::vector<double> roots;
  auto g = [&](double tau) { return prof.phi(tau) - target; };
  double H = 0.0;
  double prev = -target;
  for (int k = 1; k <= n; ++k) {
    const double a = (k - 1) * dt, b = k * dt;
    H += numerics::integrate([&](double xi) { return prof.h(xi); }, a, b, opt).value;
    const double cur = b + H - target;
    if (cur == 0.0) {
      roots.push_back(b);
    } else if (prev != 0.0 && (prev < 0.0) != (cur < 0.0)) {
      numerics::RootOptions ro;
      ro.abs_tol = 1e-13 * prof.theta();
      try {
        roots.push_back(numerics::find_root(g, a, b, ro).root);
      } catch (const RootNotFound&) {
        roots.push_back(prev * cur < 0 ? 0.5 * (a + b) : b);
      }
    }
    prev = cur;
  }
  return roots;
}

// First zero of tau00 - tau (1 + h(tau)) on (0, tau_max].
std::optional<double> singular_time(const QuarticProfile& prof, double t00, double tau_max) {
  auto den = [&](double tau) { return t00 - tau * (1.0 + prof.h(tau)); };
  const double w = prof.peak_width();
  const int n = std::clamp(static_cast<int>(std::ceil(tau_max / (w / 20.0))), 400, 20000);
  auto brackets = numerics::scan_brackets(den, 0.0, tau_max, n);
  if (brackets.empty()) return std::nullopt;
  numerics::RootOptions ro;
  ro.abs_tol = 1e-13 * prof.theta();
  return numerics::find_root(den, brackets.front().first, brackets.front().second, ro).root;
}

bool approx_le(double a, double b) { return a <= b + 1e-12 * std::max(std::abs(a), std::abs(b)); }

}  // namespace

std::string_view to_string(BranchKind k) {
  switch (k) {
    case BranchKind::pre_kick:
      return "pre-kick";
    case BranchKind::jump:
      return "jump";
    case BranchKind::post_kick:
      return "post-kick";
  }
  return "?";
}

const Branch& BranchSet::selected_branch() const {
  if (!selected) throw NoStableBranch("no stable exit branch; decay is static only");
  return branches.at(*selected);
}

double tau00(const BarrierSpec& spec) {
  spec.validate();
  return std::sqrt(2.0 * spec.m * (spec.V - spec.E)) / spec.E0;
}

double static_action(const BarrierSpec& spec) {
  return 4.0 / 3.0 * (spec.V - spec.E) * tau00(spec);
}

double map_tau_to_x(const BarrierSpec& spec, const StepProfile& step, double tau0) {
  if (tau0 < 0.0) throw DomainError("tau0 must be non-negative");
  const double t00 = tau00(spec);
  return spec.E0 / (2.0 * spec.m) * (2.0 * tau0 * t00 - tau0 * tau0 - 2.0 * step.moment_h(tau0));
}

double map_tau_to_x(const BarrierSpec& spec, const QuarticProfile& prof, double tau0) {
  if (tau0 < 0.0) throw DomainError("tau0 must be non-negative");
  const double t00 = tau00(spec);
  return spec.E0 / (2.0 * spec.m) * (2.0 * tau0 * t00 - tau0 * tau0 - 2.0 * prof.moment_h(tau0));
}

double exit_coordinate(const BarrierSpec& spec, const StepProfile& step, double tau1) {
  const double t00 = tau00(spec);
  double bracket = 2.0 * tau1 * t00 - tau1 * tau1;
  if (tau1 >= step.theta) bracket -= 2.0 * step.theta * (t00 - tau1);
  return spec.E0 / (2.0 * spec.m) * bracket;
}

double action_gradient(const BarrierSpec& spec, const StepProfile& step, double tau0) {
  return spec.E0 * (step.phi(tau0) - tau00(spec));
}

double action_gradient(const BarrierSpec& spec, const QuarticProfile& prof, double tau0) {
  return spec.E0 * (prof.phi(tau0) - tau00(spec));
}

double action_gradient_at_x(const BarrierSpec& spec, const QuarticProfile& prof, double x,
                            double tau_max) {
  auto g = [&](double tau) { return map_tau_to_x(spec, prof, tau) - x; };
  const double tau0 = numerics::find_root(g, 0.0, tau_max).root;
  return action_gradient(spec, prof, tau0);
}

double action_curvature(const BarrierSpec& spec, const QuarticProfile& prof, double tau0) {
  const double t00 = tau00(spec);
  const double h = prof.h(tau0);
  const double den = t00 - tau0 * (1.0 + h);
  if (std::abs(den) <= 1e-14 * t00) {
    std::ostringstream msg;
    msg << "curvature diverges at tau0 = " << tau0;
    throw SingularityError(msg.str());
  }
  return spec.m * (1.0 + h) / den;
}

Pulse stability_pulse(const BarrierSpec& spec, const StepProfile& step) {
  Pulse p;
  p.shape = PulseShape::quartic_gaussian;
  p.theta = step.theta;
  p.omega = 2.0 / step.theta;
  p.amplitude = spec.E0 * relative_amplitude_for_lambda(step.lambda, p.omega, p.theta);
  return p;
}

BranchSet solve_branches(const BarrierSpec& spec, const StepProfile& step) {
  if (!(step.theta > 0.0)) throw DomainError("theta must be positive");
  if (!(step.lambda >= 0.0)) throw DomainError("lambda must be non-negative");
  const double t00 = tau00(spec);
  const double th = step.theta, lam = step.lambda;

  BranchSet out;
  auto add = [&](double tau1, BranchKind kind) {
    Branch b;
    b.tau1 = tau1;
    b.kind = kind;
    b.action = action_area(spec, step, tau1).action;
    b.x1 = exit_coordinate(spec, step, tau1);
    b.deltaE = energy_gain(spec, step, b).deltaE;
    out.branches.push_back(b);
  };
  if (lam == 0.0) {
    add(t00, BranchKind::pre_kick);
    out.branches.back().stable = true;
    out.selected = 0;
    return out;
  }
  if (t00 <= th) add(t00, BranchKind::pre_kick);
  if ((1.0 - lam) * th <= t00 && t00 <= th) add(th, BranchKind::jump);
  if (t00 >= (1.0 - lam) * th) add(t00 + lam * th, BranchKind::post_kick);

  const QuarticProfile prof(stability_pulse(spec, step), spec.E0);
  const double w = prof.peak_width();
  const double tau_max = std::max(t00 + lam * th, th) + 10.0 * w;
  const std::vector<double> roots = phi_roots(prof, t00, tau_max);

  std::vector<double> best_distance(out.branches.size(), inf);
  for (double r : roots) {
    std::size_t nearest = 0;
    for (std::size_t i = 1; i < out.branches.size(); ++i)
      if (std::abs(out.branches[i].tau1 - r) < std::abs(out.branches[nearest].tau1 - r))
        nearest = i;
    const double d = std::abs(out.branches[nearest].tau1 - r);
    if (d >= best_distance[nearest]) continue;
    try {
      out.branches[nearest].curvature = action_curvature(spec, prof, r);
      out.branches[nearest].curvature_resolved = true;
      best_distance[nearest] = d;
    } catch (const SingularityError&) {
    }
  }
  for (auto& b : out.branches) {
    if (b.curvature_resolved)
      b.stable = b.curvature < 0.0;
    else
      b.stable = b.kind != BranchKind::pre_kick;
  }

  const double E_ext = resonance_params(spec, th, lam).E_ext;
  for (auto& b : out.branches)
    if (b.kind != BranchKind::pre_kick) b.escapes = approx_le(spec.E, E_ext);

  try {
    out.tau2 = singular_time(prof, t00, tau_max);
  } catch (const RootNotFound&) {
  }

  for (std::size_t i = 0; i < out.branches.size(); ++i) {
    if (!out.branches[i].stable || !out.branches[i].escapes) continue;
    if (!out.selected || out.branches[i].action < out.branches[*out.selected].action)
      out.selected = i;
  }
  return out;
}

double action_quadrature(const BarrierSpec& spec, const StepProfile& step, double tau1) {
  const double t00 = tau00(spec);
  numerics::QuadOptions opt;
  opt.rel_tol = 1e-13;
  const double integral =
      numerics::integrate([&](double tau) { return std::pow(step.phi(tau), 2); }, 0.0, tau1, opt,
                          {step.theta})
          .value;
  return scale_action(spec) * (tau1 * t00 * t00 - integral);
}

double action_quadrature(const BarrierSpec& spec, const QuarticProfile& prof, double tau1) {
  const double t00 = tau00(spec);
  numerics::QuadOptions opt;
  opt.rel_tol = 1e-10;
  std::vector<double> breaks;
  for (int k = -6; k <= 6; ++k) breaks.push_back(prof.theta() + k * prof.peak_width());
  const double integral =
      numerics::integrate([&](double tau) { return std::pow(prof.phi(tau), 2); }, 0.0, tau1, opt,
                          breaks)
          .value;
  return scale_action(spec) * (tau1 * t00 * t00 - integral);
}

AreaAction action_area(const BarrierSpec& spec, const StepProfile& step, double tau1) {
  const double t00 = tau00(spec);
  const double c2 = t00 * t00;
  AreaAction out;

  // Signed area of tau00^2 - (tau - s)^2 over [a, b], split at the crossings.
  auto piece = [&](double a, double b, double s) {
    if (!(b > a)) return;
    std::vector<double> cuts{a};
    for (double r : {s - t00, s + t00})
      if (r > a && r < b) cuts.push_back(r);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double lo = cuts[i], hi = cuts[i + 1];
      const double area =
          c2 * (hi - lo) - (std::pow(hi - s, 3) - std::pow(lo - s, 3)) / 3.0;
      if (area >= 0.0)
        out.q_plus += area;
      else
        out.q_minus -= area;
    }
  };
  piece(0.0, std::min(tau1, step.theta), 0.0);
  piece(step.theta, tau1, step.lambda * step.theta);
  out.action = scale_action(spec) * (out.q_plus - out.q_minus);
  return out;
}

ResonanceParams resonance_params(const BarrierSpec& spec, double theta, double lambda) {
  spec.validate();
  if (!(theta > 0.0)) throw DomainError("theta must be positive");
  const double unit = theta * theta * spec.E0 * spec.E0 / (6.0 * spec.m);
  ResonanceParams r;
  r.lambda_T = 1.0 - 1.0 / std::sqrt(3.0);
  r.E_R = spec.V - unit;
  r.E_ext = r.E_R;
  if (lambda < r.lambda_T)
    r.E_ext -= unit * (1.0 + 1.0 / std::sqrt(3.0) - lambda) * (r.lambda_T - lambda);
  r.E2 = spec.V - 3.0 * unit;
  r.E1 = spec.V - 3.0 * unit * (1.0 - lambda) * (1.0 - lambda);
  return r;
}

double action_closed(const BarrierSpec& spec, const StepProfile& step) {
  const double t00 = tau00(spec);
  const double th = step.theta, lam = step.lambda;
  if (!(approx_le((1.0 - lam) * th, t00) && approx_le(t00, th))) {
    std::ostringstream msg;
    msg << "no jump branch: need (1-lambda) theta <= tau00 <= theta, got tau00 = " << t00
        << ", theta = " << th << ", lambda = " << lam;
    throw DomainError(msg.str());
  }
  const ResonanceParams r = resonance_params(spec, th, lam);
  if (!approx_le(spec.E, r.E_ext)) {
    std::ostringstream msg;
    msg << "energy " << spec.E << " above E_ext = " << r.E_ext;
    throw DomainError(msg.str());
  }
  return 2.0 * (r.E_R - spec.E) * th;
}

double resonance_theta(const BarrierSpec& spec) {
  spec.validate();
  return std::sqrt(6.0 * spec.m * (spec.V - spec.E)) / spec.E0;
}

EnergyGain energy_gain(const BarrierSpec& spec, const StepProfile& step, const Branch& branch) {
  const double t00 = tau00(spec);
  const double tau1 = branch.tau1;
  const double dbl = -step.lambda * step.theta * std::max(0.0, tau1 - step.theta);
  EnergyGain g;
  g.deltaE = (spec.V - spec.E) / (t00 * t00) * (t00 * t00 - tau1 * tau1 - 2.0 * dbl);
  g.exit_energy = spec.E + g.deltaE;
  return g;
}

EnergyGain energy_gain(const BarrierSpec& spec, const QuarticProfile& prof, double tau1) {
  const double t00 = tau00(spec);
  EnergyGain g;
  g.deltaE = (spec.V - spec.E) / (t00 * t00) *
             (t00 * t00 - tau1 * tau1 - 2.0 * prof.double_integral_h(tau1));
  g.exit_energy = spec.E + g.deltaE;
  return g;
}

double action_decomposition_check(const BarrierSpec& spec, const StepProfile& step,
                                  const Branch& branch) {
  const EnergyGain g = energy_gain(spec, step, branch);
  BarrierSpec shifted = spec;
  shifted.E = g.exit_energy;
  return branch.action - (static_action(shifted) + 2.0 * step.theta * g.deltaE);
}

double exit_packet_duration(const BarrierSpec& spec, double theta) {
  spec.validate();
  if (!(theta > 0.0)) throw DomainError("theta must be positive");
  const double gap = theta * theta * spec.E0 * spec.E0 / (6.0 * spec.m);  // V - E_R
  return theta * std::pow(4.0 / (3.0 * gap * theta), 0.25);
}

double sigma1(double tau1_over_tau00, double h_at_tau1) {
  const double arg = 1.0 - tau1_over_tau00 * (1.0 + h_at_tau1);
  if (!(arg > 0.0)) {
    std::ostringstream msg;
    msg << "first correction diverges: 1 - (tau1/tau00)(1+h) = " << arg;
    throw DomainError(msg.str());
  }
  return -0.5 * std::log(arg) - 0.5;
}

double sigma1(const BarrierSpec& spec, const QuarticProfile& prof, double tau1) {
  return sigma1(tau1 / tau00(spec), prof.h(tau1));
}

std::optional<double> smooth_exit_time(const BarrierSpec& spec, const QuarticProfile& prof,
                                       double guess) {
  const double t00 = tau00(spec);
  const double tau_max = std::max(guess, prof.theta()) + t00 + 10.0 * prof.peak_width();
  const std::vector<double> roots = phi_roots(prof, t00, tau_max);
  if (roots.empty()) return std::nullopt;
  return *std::min_element(roots.begin(), roots.end(), [&](double a, double b) {
    return std::abs(a - guess) < std::abs(b - guess);
  });
}

namespace {

struct SmoothExit {
  double tau1 = 0.0;
  double h = 0.0;
  double prefactor = 0.0;
};

std::optional<SmoothExit> smooth_exit(const BarrierSpec& spec, const Pulse& pulse,
                                      double guess) {
  const QuarticProfile prof(pulse, spec.E0);
  const auto tau1 = smooth_exit_time(spec, prof, guess);
  if (!tau1) return std::nullopt;
  SmoothExit s;
  s.tau1 = *tau1;
  s.h = prof.h(*tau1);
  const double q = (s.tau1 * s.h + s.tau1 - tau00(spec)) * (1.0 + s.h);
  if (!(q > 0.0)) return std::nullopt;
  s.prefactor = 4.0 / std::numbers::e * (spec.V - spec.E) * std::sqrt(2.0 * pi * spec.m) /
                spec.E0 / std::sqrt(q);
  return s;
}

}  // namespace

EscapeProbability escape_probability(const BarrierSpec& spec, const Pulse& pulse, double t,
                                     double x_det) {
  if (pulse.shape != PulseShape::quartic_gaussian)
    throw DomainError("escape probability is defined for the quartic-gaussian pulse");
  if (!(t >= 0.0)) throw DomainError("time must be non-negative");
  EscapeProbability out;
  out.static_exponent = static_action(spec);
  out.static_term = t * (spec.V - spec.E) * std::exp(-out.static_exponent);
  out.exponent_theta = probability_vs_theta(spec, pulse.theta);
  out.W = out.static_term;
  out.action = out.static_exponent;

  const double lam = effective_amplitude(pulse, spec.E0).lambda;
  const ResonanceParams r = resonance_params(spec, pulse.theta, lam);
  out.exponent_step = spec.E < r.E_ext ? 2.0 * (r.E_R - spec.E) * pulse.theta : inf;
  if (lam == 0.0) return out;

  const StepProfile step{lam, pulse.theta};
  const BranchSet bs = solve_branches(spec, step);
  if (!bs.selected) return out;
  const Branch& br = bs.selected_branch();
  out.action = br.action;
  out.exponent_small_flag = br.action < 3.0;

  const auto se = smooth_exit(spec, pulse, br.tau1);
  if (!se) return out;
  out.resonant_branch = true;
  out.prefactor = se->prefactor;
  const double travel = std::max(0.0, x_det - br.x1);
  out.arrived = t >= std::sqrt(2.0 * spec.m * travel / spec.E0);
  if (out.arrived) out.resonant_term = out.prefactor * std::exp(-br.action);
  out.W = out.static_term + out.resonant_term;
  return out;
}

double probability_vs_theta(const BarrierSpec& spec, double theta) {
  const double A0 = static_action(spec);
  const double thR = resonance_theta(spec);
  if (theta > thR) return A0;
  return 3.0 * std::sqrt(3.0) * A0 * (thR - theta) / thR;
}

SemiclassicalCheck semiclassical_check(const BarrierSpec& spec, const Pulse& pulse) {
  const double t00 = tau00(spec);
  const double th = pulse.theta;
  const double w2t2 = pulse.omega2theta2();
  const double budget = (spec.V - spec.E) * th;
  SemiclassicalCheck c;
  c.triangular_ratio = th == t00 ? inf
                                 : std::abs(t00 / (th - t00)) * w2t2 * w2t2 *
                                       std::abs(std::log(w2t2)) / budget;
  c.smooth_ratio = w2t2 / budget;
  c.ok = pulse.shape == PulseShape::quartic_gaussian ? c.triangular_ratio <= 0.1
                                                     : c.smooth_ratio <= 0.1;
  return c;
}

double trajectory_triangular(const BarrierSpec& spec, const StepProfile& step, double tau1,
                             double tau) {
  if (tau < 0.0 || tau > tau1) throw DomainError("tau outside [0, tau1]");
  const double tail = -step.lambda * step.theta * std::max(0.0, tau1 - std::max(tau, step.theta));
  return spec.E0 / (2.0 * spec.m) * (tau1 * tau1 - tau * tau + 2.0 * tail);
}

double trajectory_velocity(const BarrierSpec& spec, const StepProfile& step, double tau1,
                           double tau) {
  if (tau < 0.0 || tau > tau1) throw DomainError("tau outside [0, tau1]");
  const double phi = tau >= tau1 ? tau00(spec) : step.phi(tau);
  return -spec.E0 / spec.m * phi;
}

DecayResult decay(const BarrierSpec& spec, const Pulse& pulse) {
  if (pulse.shape != PulseShape::quartic_gaussian)
    throw DomainError("decay is defined for the quartic-gaussian pulse");
  DecayResult d;
  d.A0 = static_action(spec);
  d.A = d.A0;
  d.exit_energy = spec.E;
  d.delta_t = exit_packet_duration(spec, pulse.theta);
  d.sigma1 = std::numeric_limits<double>::quiet_NaN();
  d.W_exponent = -d.A0;

  const double lam = effective_amplitude(pulse, spec.E0).lambda;
  if (lam == 0.0) return d;
  const StepProfile step{lam, pulse.theta};
  const BranchSet bs = solve_branches(spec, step);
  if (!bs.selected) return d;
  const Branch& br = bs.selected_branch();
  d.branch = br;
  d.A = br.action;
  d.deltaE = br.deltaE;
  d.exit_energy = spec.E + br.deltaE;
  d.W_exponent = -std::min(d.A0, d.A);
  if (const auto se = smooth_exit(spec, pulse, br.tau1)) {
    d.prefactor = se->prefactor;
    try {
      d.sigma1 = sigma1(se->tau1 / tau00(spec), se->h);
    } catch (const DomainError&) {
    }
  }
  return d;
}

}  // namespace eres
