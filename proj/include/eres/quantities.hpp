#pragma once

// Unit systems. Physics runs internally with hbar = 1; lab units (eV, cm, s,
// elementary charge) appear only at I/O boundaries.
//
//   atomic          hbar = m_e = e = 1; energy in hartree, length in bohr
//   nuclear-natural hbar = c = 1, energies in MeV; charge is absorbed into
//                   couplings (e^2 = alpha) and has no separate unit

#include <array>
#include <string>
#include <string_view>

namespace eres {

/// CODATA 2018 values, frozen here and nowhere else.
namespace constants {
inline constexpr double hbar_eVs = 6.582119569e-16;              // eV s
inline constexpr double alpha = 7.2973525693e-3;                 // fine-structure constant
inline constexpr double c_cm_per_s = 2.99792458e10;              // cm / s
inline constexpr double electron_mass_eV = 510998.95000;         // m_e c^2
inline constexpr double alpha_particle_mass_MeV = 3727.3794066;  // m_alpha c^2
inline constexpr double hartree_eV = 27.211386245988;
inline constexpr double bohr_cm = 5.29177210903e-9;
inline constexpr double atomic_time_s = 2.4188843265857e-17;   // hbar / E_h
inline constexpr double atomic_field_V_per_cm = 5.14220674763e9;  // E_h / (e a_0)
inline constexpr double hbar_c_MeV_cm = 1.973269804e-11;
inline constexpr double inverse_MeV_s = 6.582119569e-22;  // hbar / (1 MeV)
inline constexpr double elementary_charge_C = 1.602176634e-19;
}  // namespace constants

/// Exponents of (energy, length, time, charge).
struct Dimension {
  std::array<int, 4> exponents{};

  constexpr int energy() const { return exponents[0]; }
  constexpr int length() const { return exponents[1]; }
  constexpr int time() const { return exponents[2]; }
  constexpr int charge() const { return exponents[3]; }

  friend constexpr Dimension operator*(Dimension a, Dimension b) {
    Dimension out;
    for (int i = 0; i < 4; ++i) out.exponents[i] = a.exponents[i] + b.exponents[i];
    return out;
  }
  friend constexpr Dimension operator/(Dimension a, Dimension b) {
    Dimension out;
    for (int i = 0; i < 4; ++i) out.exponents[i] = a.exponents[i] - b.exponents[i];
    return out;
  }
  friend constexpr bool operator==(Dimension, Dimension) = default;

  std::string to_string() const;
};

namespace dims {
inline constexpr Dimension none{};
inline constexpr Dimension energy{{1, 0, 0, 0}};
inline constexpr Dimension length{{0, 1, 0, 0}};
inline constexpr Dimension time{{0, 0, 1, 0}};
inline constexpr Dimension charge{{0, 0, 0, 1}};
// Field with the particle charge absorbed: energy per length.
inline constexpr Dimension field{{1, -1, 0, 0}};
inline constexpr Dimension mass{{1, -2, 2, 0}};
inline constexpr Dimension velocity{{0, 1, -1, 0}};
}  // namespace dims

enum class UnitSystem { lab, atomic, nuclear };

std::string_view to_string(UnitSystem s);
UnitSystem unit_system_from_string(std::string_view name);

struct Quantity {
  double value = 0.0;
  Dimension dim{};
  UnitSystem system = UnitSystem::lab;

  friend Quantity operator*(const Quantity& a, const Quantity& b);
  friend Quantity operator/(const Quantity& a, const Quantity& b);
};

/// Rescales q into the target system. Throws DimensionMismatch when the
/// target cannot express the dimension (charge in nuclear-natural units).
Quantity convert(const Quantity& q, UnitSystem target);

/// Size of one unit of `d` in system `s`, expressed in lab units.
double unit_scale(Dimension d, UnitSystem s);

/// Barrier problem in the internal system: well level E under a barrier of
/// height V with static field E0 (energy per length), particle mass m.
struct BarrierSpec {
  double V = 0.0;
  double E = 0.0;
  double E0 = 0.0;
  double m = 0.0;
  UnitSystem system = UnitSystem::atomic;

  /// Throws DomainError unless V > E, E0 > 0 and m > 0.
  void validate() const;
};

/// Lab-unit description of a barrier problem.
struct LabBarrier {
  double V_eV = 0.0;
  double E_eV = 0.0;
  double field_eV_per_cm = 0.0;  // force on the particle per unit length
  double mass_eV = constants::electron_mass_eV;  // rest energy
  UnitSystem target = UnitSystem::atomic;
};

BarrierSpec to_natural(const LabBarrier& lab);

// Convenience lab <-> internal conversions for common scalars.
double energy_to_lab_eV(double value, UnitSystem s);
double energy_from_lab_eV(double eV, UnitSystem s);
double time_to_seconds(double value, UnitSystem s);
double time_from_seconds(double seconds, UnitSystem s);
double field_to_eV_per_cm(double value, UnitSystem s);
double field_from_eV_per_cm(double value, UnitSystem s);
double mass_from_rest_energy_eV(double eV, UnitSystem s);

}  // namespace eres
