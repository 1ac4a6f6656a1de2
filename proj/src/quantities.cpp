#include "eres/quantities.hpp"

#include <cmath>
#include <sstream>

#include "eres/errors.hpp"

namespace eres {

namespace {

struct BaseUnits {
  double energy_eV;
  double length_cm;
  double time_s;
  double charge_e;  // 0 when charge is not a base unit of the system
};

BaseUnits base_units(UnitSystem s) {
  switch (s) {
    case UnitSystem::lab:
      return {1.0, 1.0, 1.0, 1.0};
    case UnitSystem::atomic:
      return {constants::hartree_eV, constants::bohr_cm, constants::atomic_time_s, 1.0};
    case UnitSystem::nuclear:
      return {1e6, constants::hbar_c_MeV_cm, constants::inverse_MeV_s, 0.0};
  }
  throw DomainError("unknown unit system");
}

}  // namespace

std::string Dimension::to_string() const {
  static constexpr const char* names[] = {"energy", "length", "time", "charge"};
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < 4; ++i) {
    if (exponents[i] == 0) continue;
    if (!first) os << "*";
    os << names[i];
    if (exponents[i] != 1) os << "^" << exponents[i];
    first = false;
  }
  return first ? "1" : os.str();
}

std::string_view to_string(UnitSystem s) {
  switch (s) {
    case UnitSystem::lab:
      return "lab";
    case UnitSystem::atomic:
      return "atomic";
    case UnitSystem::nuclear:
      return "nuclear";
  }
  return "?";
}

UnitSystem unit_system_from_string(std::string_view name) {
  if (name == "lab") return UnitSystem::lab;
  if (name == "atomic") return UnitSystem::atomic;
  if (name == "nuclear" || name == "nuclear-natural") return UnitSystem::nuclear;
  throw DomainError("unknown unit system '" + std::string(name) + "'");
}

double unit_scale(Dimension d, UnitSystem s) {
  const BaseUnits b = base_units(s);
  if (d.charge() != 0 && b.charge_e == 0.0) {
    throw DimensionMismatch("dimension " + d.to_string() + " has no representation in the " +
                            std::string(to_string(s)) + " system");
  }
  double scale = std::pow(b.energy_eV, d.energy()) * std::pow(b.length_cm, d.length()) *
                 std::pow(b.time_s, d.time());
  if (d.charge() != 0) scale *= std::pow(b.charge_e, d.charge());
  return scale;
}

Quantity convert(const Quantity& q, UnitSystem target) {
  if (q.system == target) return q;
  const double to_target = unit_scale(q.dim, target);
  const double from_source = unit_scale(q.dim, q.system);
  if (q.value == 0.0) return {0.0, q.dim, target};
  return {q.value * from_source / to_target, q.dim, target};
}

Quantity operator*(const Quantity& a, const Quantity& b) {
  const Quantity bb = convert(b, a.system);
  return {a.value * bb.value, a.dim * b.dim, a.system};
}

Quantity operator/(const Quantity& a, const Quantity& b) {
  const Quantity bb = convert(b, a.system);
  return {a.value / bb.value, a.dim / b.dim, a.system};
}

void BarrierSpec::validate() const {
  if (!(V > E)) throw DomainError("barrier requires V > E");
  if (!(E0 > 0.0)) throw DomainError("static field E0 must be positive");
  if (!(m > 0.0)) throw DomainError("mass must be positive");
}

double energy_to_lab_eV(double value, UnitSystem s) {
  return convert({value, dims::energy, s}, UnitSystem::lab).value;
}
double energy_from_lab_eV(double eV, UnitSystem s) {
  return convert({eV, dims::energy, UnitSystem::lab}, s).value;
}
double time_to_seconds(double value, UnitSystem s) {
  return convert({value, dims::time, s}, UnitSystem::lab).value;
}
double time_from_seconds(double seconds, UnitSystem s) {
  return convert({seconds, dims::time, UnitSystem::lab}, s).value;
}
double field_to_eV_per_cm(double value, UnitSystem s) {
  return convert({value, dims::field, s}, UnitSystem::lab).value;
}
double field_from_eV_per_cm(double value, UnitSystem s) {
  return convert({value, dims::field, UnitSystem::lab}, s).value;
}
double mass_from_rest_energy_eV(double eV, UnitSystem s) {
  const double c = constants::c_cm_per_s;
  return convert({eV / (c * c), dims::mass, UnitSystem::lab}, s).value;
}

BarrierSpec to_natural(const LabBarrier& lab) {
  if (!(lab.V_eV > lab.E_eV)) throw DomainError("no barrier: V must exceed E");
  if (!(lab.mass_eV > 0.0)) throw DomainError("mass must be positive");
  if (!(lab.field_eV_per_cm > 0.0)) throw DomainError("static field must be positive");
  const UnitSystem s = lab.target;
  BarrierSpec spec{energy_from_lab_eV(lab.V_eV, s), energy_from_lab_eV(lab.E_eV, s),
                   field_from_eV_per_cm(lab.field_eV_per_cm, s),
                   mass_from_rest_energy_eV(lab.mass_eV, s), s};
  return spec;
}

}  // namespace eres
