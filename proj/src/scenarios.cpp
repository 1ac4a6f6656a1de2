#include "eres/scenarios.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "eres/errors.hpp"
#include "eres/numerics.hpp"
#include "eres/triangular.hpp"

namespace eres {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double seconds_per_year = 3.15576e7;

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

void add(ScenarioReport& r, std::string key, std::string unit, double computed,
         std::optional<double> quoted = {}) {
  r.entries.push_back({std::move(key), std::move(unit), computed, quoted});
}

void flag(ScenarioReport& r, std::string name, bool ok, double value, double limit) {
  r.flags.push_back({std::move(name), ok, value, limit});
}

}  // namespace

void AlphaSpec::validate() const {
  if (!(beta > 0.0)) throw DomainError("alpha spec: beta must be positive");
  if (!(E > 0.0)) throw DomainError("alpha spec: energy must be positive");
  if (!(m > 0.0)) throw DomainError("alpha spec: mass must be positive");
  if (!(omega2theta2 >= 0.0)) throw DomainError("alpha spec: W^2 th^2 must be non-negative");
}

AlphaSpec alpha_spec(int daughter_charge, double E_MeV, double omega2theta2) {
  AlphaSpec s;
  s.beta = 2.0 * daughter_charge * constants::alpha;
  s.E = E_MeV;
  s.omega2theta2 = omega2theta2;
  s.validate();
  return s;
}

AlphaSpec nd144_preset() { return alpha_spec(58, 1.9, 15.0); }
AlphaSpec soft_alpha_preset() { return alpha_spec(58, 1e-3, 18.0); }

double alpha_static_action(const AlphaSpec& s) {
  s.validate();
  return pi * s.beta * std::sqrt(2.0 * s.m / s.E);
}

AlphaResonance alpha_resonance(const AlphaSpec& s) {
  s.validate();
  AlphaResonance r;
  r.theta_R = pi * s.beta * std::sqrt(27.0 * s.m / (8.0 * s.E * s.E * s.E));
  // exit level from the Coulomb time-of-flight relation at theta_R
  r.exit_energy = std::pow(pi * s.beta * std::sqrt(2.0 * s.m) / (4.0 * r.theta_R), 2.0 / 3.0);
  r.exit_ratio = r.exit_energy / s.E;
  return r;
}

double alpha_rate(const AlphaSpec& s, double theta) {
  if (!(theta >= 0.0)) throw DomainError("theta must be non-negative");
  const double A0 = alpha_static_action(s);
  const double tR = alpha_resonance(s).theta_R;
  if (theta > tR) return A0;
  return std::sqrt(3.0) * A0 * (tR - theta) / tR;
}

AlphaThreshold alpha_threshold(const AlphaSpec& s) {
  s.validate();
  AlphaThreshold t;
  t.natural = 4.0 * std::sqrt(2.0) / (9.0 * pi * pi) * s.E * s.E / s.beta *
              std::exp(-s.omega2theta2);
  t.eV_per_cm = field_to_eV_per_cm(t.natural, UnitSystem::nuclear);
  t.volts_per_cm = t.eV_per_cm / 2.0;
  return t;
}

const ReportEntry& ScenarioReport::at(const std::string& key) const {
  for (const auto& e : entries)
    if (e.key == key) return e;
  throw std::out_of_range("no report entry named " + key);
}

bool ScenarioReport::all_ok() const {
  for (const auto& f : flags)
    if (!f.ok) return false;
  return true;
}

ScenarioReport alpha_report(const AlphaSpec& s, std::optional<double> theta_over_thetaR) {
  s.validate();
  const bool nd = same(s.beta, nd144_preset().beta) && same(s.E, nd144_preset().E) &&
                  same(s.m, nd144_preset().m);
  const bool soft = same(s.beta, soft_alpha_preset().beta) && same(s.E, soft_alpha_preset().E) &&
                    same(s.m, soft_alpha_preset().m);
  auto quoted = [&](std::optional<double> v_nd, std::optional<double> v_soft) {
    return nd ? v_nd : soft ? v_soft : std::nullopt;
  };
  const double O2 = s.omega2theta2;
  const bool quoted_eps = (nd && O2 == 15.0) || (soft && O2 == 18.0);

  ScenarioReport r;
  r.scenario = nd ? "alpha-nd144" : soft ? "soft-alpha" : "alpha";
  r.conversion =
      "nuclear-natural internal units (hbar = c = 1, MeV); fields as force per unit charge in "
      "eV/cm, volts_per_cm divides by the alpha charge 2e";
  const double A0 = alpha_static_action(s);
  const AlphaResonance res = alpha_resonance(s);
  const AlphaThreshold th = alpha_threshold(s);

  add(r, "beta", "", s.beta);
  add(r, "energy", "MeV", s.E);
  add(r, "mass", "MeV", s.m);
  add(r, "omega2theta2", "", O2);
  add(r, "A0", "", A0, quoted(177.0, 1.3e4));
  add(r, "theta_R", "s", time_to_seconds(res.theta_R, UnitSystem::nuclear), quoted(0.8e-19, 1e-14));
  add(r, "exit_energy", "MeV", res.exit_energy);
  add(r, "exit_ratio", "", res.exit_ratio, 1.0 / 3.0);
  add(r, "eps_T", "eV/cm", th.eV_per_cm, quoted_eps ? quoted(1e9, 20.0) : std::nullopt);
  add(r, "eps_T_field", "V/cm", th.volts_per_cm);
  add(r, "theta_accuracy", "", 1.0 / A0, quoted(std::nullopt, 1e-4));
  if (theta_over_thetaR) {
    const double theta = *theta_over_thetaR * res.theta_R;
    add(r, "theta", "s", time_to_seconds(theta, UnitSystem::nuclear));
    add(r, "W_exponent", "", alpha_rate(s, theta));
  }

  const double semiclassical = O2 / (s.E * res.theta_R);
  flag(r, "semiclassical", semiclassical <= 0.1, semiclassical, 0.1);
  flag(r, "static_suppressed", A0 >= 10.0, A0, 10.0);
  if (nd || soft) r.notes.push_back("reference values quoted next to the recomputed ones");
  return r;
}

ScenarioReport hydrogen_report(double field_eV_per_cm, double omega2theta2, double binding_eV,
                               double theta_over_thetaR) {
  if (!(field_eV_per_cm > 0.0)) throw DomainError("hydrogen: field must be positive");
  if (!(omega2theta2 >= 0.0)) throw DomainError("hydrogen: W^2 th^2 must be non-negative");
  if (!(theta_over_thetaR > 0.0)) throw DomainError("hydrogen: theta must be positive");
  LabBarrier lab;
  lab.V_eV = binding_eV;
  lab.E_eV = 0.0;
  lab.field_eV_per_cm = field_eV_per_cm;
  const BarrierSpec spec = to_natural(lab);
  const UnitSystem u = spec.system;
  const bool reference = same(field_eV_per_cm, 2e7) && same(binding_eV, 13.6);
  auto quoted = [&](double v) { return reference ? std::optional<double>(v) : std::nullopt; };

  const double A0 = static_action(spec);
  const double tR = resonance_theta(spec);
  const double theta = theta_over_thetaR * tR;
  const double dt = exit_packet_duration(spec, tR);
  const double eps_T = std::sqrt(2.0 / 3.0) * spec.E0 / pi * std::exp(-omega2theta2);
  const double gap = spec.V - spec.E;

  // jump branch at E = E_R(theta_R) with a super-threshold step
  const StepProfile step{0.5, tR};
  double exit_gap_ratio = std::numeric_limits<double>::quiet_NaN();
  for (const Branch& b : solve_branches(spec, step).branches)
    if (b.kind == BranchKind::jump) exit_gap_ratio = (gap - b.deltaE) / gap;

  ScenarioReport r;
  r.scenario = "hydrogen";
  r.conversion = std::string("internal ") + std::string(to_string(u)) +
                 " units (hbar = 1); fields as force per unit charge in eV/cm";
  add(r, "field", "eV/cm", field_eV_per_cm);
  add(r, "binding", "eV", binding_eV);
  add(r, "omega2theta2", "", omega2theta2);
  add(r, "A0", "", A0, quoted(76.0));
  add(r, "static_decay_time", "yr",
      time_to_seconds(1.0 / gap, u) * std::exp(A0) / seconds_per_year, quoted(1e9));
  add(r, "theta_R", "s", time_to_seconds(tR, u), quoted(1e-14));
  add(r, "gap_theta_R", "", gap * tR, quoted(200.0));
  add(r, "delta_t", "s", time_to_seconds(dt, u), quoted(2.8e-15));
  add(r, "delta_t_over_theta", "", dt / tR, quoted(0.28));
  add(r, "exit_gap_ratio", "", exit_gap_ratio, 3.0);
  add(r, "eps_T", "eV/cm", field_to_eV_per_cm(eps_T, u), reference && omega2theta2 == 15.0
                                                               ? std::optional<double>(1.5)
                                                               : std::nullopt);
  add(r, "omega_inverse", "s", time_to_seconds(tR / std::sqrt(omega2theta2), u),
      reference && omega2theta2 == 15.0 ? std::optional<double>(2.6e-15) : std::nullopt);
  add(r, "log10_rate_coefficient", "", 3.0 * std::sqrt(3.0) * A0 / std::log(10.0), quoted(170.0));
  add(r, "theta_accuracy", "", 1.0 / A0, quoted(0.01));
  add(r, "theta", "s", time_to_seconds(theta, u));
  add(r, "W_exponent", "",
      theta <= tR ? 3.0 * std::sqrt(3.0) * A0 * (tR - theta) / tR : A0);

  const double semiclassical = omega2theta2 / (gap * tR);
  flag(r, "semiclassical", semiclassical <= 0.1, semiclassical, 0.1);
  flag(r, "static_suppressed", A0 >= 10.0, A0, 10.0);
  if (reference)
    r.notes.push_back("reference A0 = 76 does not follow from (4/3)(V - E) tau00 at these inputs");
  return r;
}

ScenarioReport metal_emission_report(const MetalInputs& in) {
  if (!(in.density_per_cm3 >= 0.0)) throw DomainError("metal: density must be non-negative");
  if (!(in.fermi_velocity_cm_per_s >= 0.0))
    throw DomainError("metal: Fermi velocity must be non-negative");
  if (!(in.period_s > 0.0)) throw DomainError("metal: pulse period must be positive");
  LabBarrier lab;
  lab.V_eV = in.work_function_eV;
  lab.E_eV = 0.0;
  lab.field_eV_per_cm = in.field_eV_per_cm;
  const BarrierSpec spec = to_natural(lab);
  const double A0 = static_action(spec);
  const double tR_s = time_to_seconds(resonance_theta(spec), spec.system);
  const bool reference = same(in.field_eV_per_cm, 2e7) && same(in.work_function_eV, 13.6);

  const double e = constants::elementary_charge_C;
  const double c = constants::c_cm_per_s;
  const double j = e * in.density_per_cm3 * in.fermi_velocity_cm_per_s / A0;
  // e n hbar E0 / (m (V - E)), the same estimate with A0 written out
  const double drift = constants::hbar_eVs * in.field_eV_per_cm /
                       (constants::electron_mass_eV / (c * c) * in.work_function_eV);
  const double j_sigma = e * in.density_per_cm3 * drift;

  ScenarioReport r;
  r.scenario = "metal";
  r.conversion = "lab units; order-of-magnitude estimate";
  add(r, "work_function", "eV", in.work_function_eV);
  add(r, "field", "eV/cm", in.field_eV_per_cm);
  add(r, "density", "cm^-3", in.density_per_cm3);
  add(r, "fermi_velocity", "cm/s", in.fermi_velocity_cm_per_s);
  add(r, "period", "s", in.period_s);
  add(r, "A0", "", A0, reference ? std::optional<double>(76.0) : std::nullopt);
  add(r, "theta_R", "s", tR_s);
  add(r, "current_density", "A/cm^2", j, reference ? std::optional<double>(1e8) : std::nullopt);
  add(r, "current_density_conductivity", "A/cm^2", j_sigma);
  add(r, "energy_spread", "", 1.0 / A0);
  flag(r, "period_covers_theta", in.period_s >= tR_s, in.period_s, tR_s);
  r.notes.push_back("estimate j ~ e n v_F / A0");
  return r;
}

OverBarrier overbarrier_exponent(const BarrierSpec& spec, double theta, double omega, double w) {
  spec.validate();
  if (!(theta > 0.0)) throw DomainError("theta must be positive");
  if (!(omega > 0.0)) throw DomainError("signal width parameter must be positive");
  if (!(w > 0.0)) throw DomainError("frequency must be positive");
  const double gap = spec.V - spec.E;
  const double O2 = omega * omega;
  auto second = [&](double x) { return 2.0 * gap * (x / (4.0 * O2) + O2 * theta * theta / x); };

  OverBarrier r;
  r.first = 2.0 * theta * gap;
  r.second = second(w);
  r.omega_opt_exact = 2.0 * O2 * theta;
  const double scale = O2 * theta;
  const auto m = numerics::golden_section_minimize(second, 1e-2 * scale, 1e2 * scale,
                                                   1e-10 * scale);
  r.omega_opt = m.x;
  r.second_min = m.value;
  r.exponent = std::min(r.first, r.second_min);

  const double tR = resonance_theta(spec);
  const double E_R = spec.V - theta * theta * spec.E0 * spec.E0 / (6.0 * spec.m);
  r.tunneling_action = theta <= tR ? 2.0 * (E_R - spec.E) * theta : static_action(spec);
  r.tunneling_wins = r.tunneling_action < r.exponent;
  return r;
}

DissipationBound dissipation_bound(double theta, double gamma, double omega2theta2,
                                   double barrier_gap) {
  if (!(theta > 0.0)) throw DomainError("theta must be positive");
  if (!(gamma >= 0.0)) throw DomainError("friction coefficient must be non-negative");
  if (!(barrier_gap > 0.0)) throw DomainError("barrier gap must be positive");
  DissipationBound d;
  d.gamma_c = 1.0 / theta;
  d.ok = gamma < d.gamma_c;
  d.margin = gamma > 0.0 ? d.gamma_c / gamma : std::numeric_limits<double>::infinity();
  d.signal_ratio = omega2theta2 / (barrier_gap * theta);
  d.friction_ratio = gamma * theta;
  d.chain_ok = d.signal_ratio <= 0.1 && d.friction_ratio <= 1.0;
  return d;
}

}  // namespace eres
