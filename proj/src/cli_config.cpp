#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "eres/cli.hpp"
#include "eres/quantities.hpp"

namespace eres::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct UnitEntry {
  std::string_view name;
  double factor;
};

constexpr double amu_eV = 931.49410242e6;

constexpr UnitEntry energy_units[] = {
    {"eV", 1.0},       {"meV", 1e-3},    {"keV", 1e3},
    {"MeV", 1e6},      {"GeV", 1e9},     {"hartree", constants::hartree_eV},
    {"Ha", constants::hartree_eV},       {"Ry", 0.5 * constants::hartree_eV},
};
constexpr UnitEntry field_units[] = {
    {"eV/cm", 1.0}, {"V/cm", 1.0},   {"keV/cm", 1e3}, {"kV/cm", 1e3}, {"MeV/cm", 1e6},
    {"MV/cm", 1e6}, {"V/m", 1e-2},   {"eV/m", 1e-2},  {"au", constants::atomic_field_V_per_cm},
};
constexpr UnitEntry time_units[] = {
    {"s", 1.0},    {"ms", 1e-3},  {"us", 1e-6},  {"ns", 1e-9},
    {"ps", 1e-12}, {"fs", 1e-15}, {"as", 1e-18}, {"au", constants::atomic_time_s},
};
constexpr UnitEntry length_units[] = {
    {"cm", 1.0},  {"m", 1e2},     {"mm", 1e-1},  {"um", 1e-4},
    {"nm", 1e-7}, {"A", 1e-8},    {"fm", 1e-13}, {"bohr", constants::bohr_cm},
};
constexpr UnitEntry mass_units[] = {
    {"eV", 1.0},
    {"keV", 1e3},
    {"MeV", 1e6},
    {"GeV", 1e9},
    {"me", constants::electron_mass_eV},
    {"m_e", constants::electron_mass_eV},
    {"amu", amu_eV},
    {"u", amu_eV},
    {"m_alpha", constants::alpha_particle_mass_MeV * 1e6},
};
constexpr UnitEntry rate_units[] = {
    {"1/s", 1.0}, {"/s", 1.0}, {"Hz", 1.0}, {"1/ps", 1e12}, {"1/fs", 1e15}, {"1/as", 1e18},
};

std::string_view kind_name(QuantityKind k) {
  switch (k) {
    case QuantityKind::dimensionless: return "dimensionless";
    case QuantityKind::energy: return "energy";
    case QuantityKind::field: return "field";
    case QuantityKind::time: return "time";
    case QuantityKind::length: return "length";
    case QuantityKind::mass: return "mass";
    case QuantityKind::rate: return "rate";
  }
  return "?";
}

template <std::size_t N>
std::optional<double> lookup(const UnitEntry (&table)[N], std::string_view unit) {
  for (const auto& e : table)
    if (e.name == unit) return e.factor;
  return std::nullopt;
}

template <std::size_t N>
std::string unit_list(const UnitEntry (&table)[N]) {
  std::string out;
  for (const auto& e : table) {
    if (!out.empty()) out += ", ";
    out += e.name;
  }
  return out;
}

}  // namespace

double parse_quantity(std::string_view text, QuantityKind kind) {
  const std::string_view s = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc()) throw ConfigError("not a number: '" + std::string(s) + "'");
  const std::string_view unit = trim(s.substr(static_cast<std::size_t>(ptr - s.data())));

  std::optional<double> factor;
  std::string known;
  switch (kind) {
    case QuantityKind::dimensionless:
      if (unit.empty()) return value;
      throw ConfigError("unexpected unit '" + std::string(unit) + "' on a dimensionless value");
    case QuantityKind::energy:
      factor = lookup(energy_units, unit);
      known = unit_list(energy_units);
      break;
    case QuantityKind::field:
      factor = lookup(field_units, unit);
      known = unit_list(field_units);
      break;
    case QuantityKind::time:
      factor = lookup(time_units, unit);
      known = unit_list(time_units);
      break;
    case QuantityKind::length:
      factor = lookup(length_units, unit);
      known = unit_list(length_units);
      break;
    case QuantityKind::mass:
      factor = lookup(mass_units, unit);
      known = unit_list(mass_units);
      break;
    case QuantityKind::rate:
      factor = lookup(rate_units, unit);
      known = unit_list(rate_units);
      break;
  }
  if (unit.empty())
    throw ConfigError("missing " + std::string(kind_name(kind)) + " unit in '" + std::string(s) +
                      "' (one of " + known + ")");
  if (!factor)
    throw ConfigError("unknown " + std::string(kind_name(kind)) + " unit '" + std::string(unit) +
                      "' (one of " + known + ")");
  return value * *factor;
}

void Config::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

bool Config::has(const std::string& key) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
}

const std::string& Config::text(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  throw ConfigError("missing required parameter '" + key + "'");
}

std::string Config::text_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? text(key) : fallback;
}

double Config::quantity(const std::string& key, QuantityKind kind) const {
  try {
    return parse_quantity(text(key), kind);
  } catch (const ConfigError& e) {
    if (!has(key)) throw;
    throw ConfigError("parameter '" + key + "': " + e.what());
  }
}

std::optional<double> Config::optional_quantity(const std::string& key, QuantityKind kind) const {
  if (!has(key)) return std::nullopt;
  return quantity(key, kind);
}

double Config::quantity_or(const std::string& key, QuantityKind kind, double fallback) const {
  return has(key) ? quantity(key, kind) : fallback;
}

void Config::merge(const Config& other) {
  for (const auto& [k, v] : other.entries_) set(k, v);
}

Config parse_config(std::string_view text) {
  Config c;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    c.set(key, value);
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

Config preset(std::string_view name) {
  if (name == "hydrogen") {
    return parse_config(
        "scenario = hydrogen\n"
        "model = triangular\n"
        "system = atomic\n"
        "V = 13.6 eV\n"
        "E = 0 eV\n"
        "field = 2e7 eV/cm\n"
        "mass = 1 me\n"
        "shape = lorentz-gaussian\n"
        "theta_over_thetaR = 1\n"
        "omega2theta2 = 15\n"
        "amplitude_over_threshold = 2\n");
  }
  if (name == "nd144" || name == "soft-alpha") {
    const bool soft = name == "soft-alpha";
    return parse_config(std::string("scenario = ") + (soft ? "soft-alpha" : "alpha") +
                        "\n"
                        "model = coulomb\n"
                        "system = nuclear\n"
                        "daughter_charge = 58\n"
                        "mass = 1 m_alpha\n" +
                        (soft ? "energy = 1 keV\nomega2theta2 = 18\n"
                              : "energy = 1.9 MeV\nomega2theta2 = 15\n"));
  }
  throw ConfigError("unknown preset '" + std::string(name) +
                    "' (one of hydrogen, nd144, soft-alpha)");
}

}  // namespace eres::cli
