#pragma once

// Application calculators: alpha decay through a Coulomb tail, hydrogen
// ionization, field emission from a metal, the over-barrier competitor and
// the friction bound. Reports carry lab units.

#include <optional>
#include <string>
#include <vector>

#include "eres/quantities.hpp"

namespace eres {

/// Coulomb tail beta / x. Nuclear-natural units: beta dimensionless,
/// energies and mass in MeV.
struct AlphaSpec {
  double beta = 0.0;
  double E = 0.0;
  double m = constants::alpha_particle_mass_MeV;
  double omega2theta2 = 15.0;

  void validate() const;
};

/// beta = 2 Z e^2 for an alpha particle leaving a daughter of charge Z.
AlphaSpec alpha_spec(int daughter_charge, double E_MeV, double omega2theta2);

/// 144Nd -> 140Ce + alpha at 1.9 MeV.
AlphaSpec nd144_preset();
/// Same daughter, 1 keV alpha, W^2 th^2 = 18.
AlphaSpec soft_alpha_preset();

/// A0 = pi beta sqrt(2m/E).
double alpha_static_action(const AlphaSpec& s);

struct AlphaResonance {
  double theta_R = 0.0;     // hbar / MeV
  double exit_energy = 0.0;  // E + dE at theta_R
  double exit_ratio = 0.0;   // (E + dE) / E
};

AlphaResonance alpha_resonance(const AlphaSpec& s);

/// sqrt3 A0 (theta_R - theta) / theta_R below theta_R, the static A0 above.
double alpha_rate(const AlphaSpec& s, double theta);

struct AlphaThreshold {
  double natural = 0.0;          // MeV^2
  double eV_per_cm = 0.0;        // force per unit length (unit charge)
  double volts_per_cm = 0.0;     // field acting on the charge 2e
};

AlphaThreshold alpha_threshold(const AlphaSpec& s);

struct ReportEntry {
  std::string key;
  std::string unit;
  double computed = 0.0;
  std::optional<double> reference;
};

struct ValidityFlag {
  std::string name;
  bool ok = false;
  double value = 0.0;
  double limit = 0.0;
};

struct ScenarioReport {
  std::string scenario;
  std::string conversion;
  std::vector<ReportEntry> entries;
  std::vector<ValidityFlag> flags;
  std::vector<std::string> notes;

  /// Throws std::out_of_range for an unknown key.
  const ReportEntry& at(const std::string& key) const;
  bool all_ok() const;
};

ScenarioReport alpha_report(const AlphaSpec& s, std::optional<double> theta_over_thetaR = {});

/// Ionization from a level 13.6 eV under the barrier top in a static field.
ScenarioReport hydrogen_report(double field_eV_per_cm, double omega2theta2,
                               double binding_eV = 13.6, double theta_over_thetaR = 1.0);

struct MetalInputs {
  double work_function_eV = 13.6;
  double field_eV_per_cm = 2e7;
  double period_s = 2e-14;
  double density_per_cm3 = 8.5e22;
  double fermi_velocity_cm_per_s = 1.57e8;
};

/// Order-of-magnitude current j ~ e n v_F / A0 for a pulse train.
ScenarioReport metal_emission_report(const MetalInputs& in);

struct OverBarrier {
  double first = 0.0;           // 2 theta (V - E)
  double second = 0.0;          // 2 (V - E)(w / 4W^2 + W^2 th^2 / w) at the given w
  double omega_opt = 0.0;       // golden-section minimizer of the second term
  double second_min = 0.0;
  double omega_opt_exact = 0.0; // 2 W^2 th
  double exponent = 0.0;        // min over both terms at the optimum
  double tunneling_action = 0.0;
  bool tunneling_wins = false;
};

/// Internal units. `tunneling_action` is the resonance action at this theta.
OverBarrier overbarrier_exponent(const BarrierSpec& spec, double theta, double omega,
                                 double w);

struct DissipationBound {
  bool ok = false;
  double gamma_c = 0.0;
  double margin = 0.0;        // gamma_c / gamma, infinite without friction
  double signal_ratio = 0.0;  // W^2 th^2 / ((V - E) theta), must stay <= 0.1
  double friction_ratio = 0.0; // gamma theta
  bool chain_ok = false;
};

DissipationBound dissipation_bound(double theta, double gamma, double omega2theta2,
                                   double barrier_gap);

}  // namespace eres
