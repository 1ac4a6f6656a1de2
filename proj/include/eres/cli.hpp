#pragma once

// Command-line front end. Configs are `key = value [unit]` lines with '#'
// comments; presets, then the config file, then command-line flags supply
// values in increasing priority.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eres/errors.hpp"
#include "json.hpp"

namespace eres::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* tool_version = "eres 1.0.0";

enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_solver = 3, exit_validity = 4 };

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class QuantityKind { dimensionless, energy, field, time, length, mass, rate };

/// "2e7 eV/cm" -> 2e7. Results are in eV, eV/cm, s, cm, eV (rest energy)
/// and 1/s. Throws ConfigError on a missing or unknown unit.
double parse_quantity(std::string_view text, QuantityKind kind);

class Config {
 public:
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  /// Throws ConfigError naming the key when absent.
  const std::string& text(const std::string& key) const;
  std::string text_or(const std::string& key, const std::string& fallback) const;
  double quantity(const std::string& key, QuantityKind kind) const;
  std::optional<double> optional_quantity(const std::string& key, QuantityKind kind) const;
  double quantity_or(const std::string& key, QuantityKind kind, double fallback) const;
  /// Overlays `other` on top of this config.
  void merge(const Config& other);
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

Config parse_config(std::string_view text);
Config load_config(const std::string& path);

/// Values for `--preset hydrogen|nd144|soft-alpha`.
Config preset(std::string_view name);

struct Column {
  std::string name;
  std::string unit;

  std::string header() const;  // name[unit]
};

struct CurveTable {
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;  // NaN marks a failed entry
  std::vector<std::pair<std::string, std::string>> metadata;

  void add_row(std::vector<double> row);
  std::string to_csv() const;
  Json to_json() const;
  /// Metadata entries named `valid:*` holding "false".
  bool all_valid() const;
};

/// %.17g; NaN prints as an empty field in CSV and null in JSON.
std::string format_number(double v);

/// Inverse of CurveTable::to_csv.
CurveTable parse_csv(std::string_view text);

Json cmd_resonance(const Config& c);
CurveTable cmd_sweep(const Config& c);
CurveTable cmd_trajectory(const Config& c);
CurveTable cmd_pulse(const Config& c);
Json cmd_scenario(const Config& c);
Json cmd_check(const Config& c);

/// Runs `eres <args...>`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eres::cli
