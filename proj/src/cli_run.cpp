#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "eres/cli.hpp"

namespace eres::cli {

namespace {

struct Options {
  std::string config_path;
  std::string format = "csv";
  std::string out_path;
  std::optional<long> points;
  bool strict = false;
  std::string preset;
  std::string scenario;
};

void add_common(CLI::App* sub, Options& o) {
  sub->allow_extras();
  sub->add_option("--config", o.config_path, "key = value config file");
  sub->add_option("--format", o.format, "csv or json (tables)")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out_path, "write output here instead of stdout");
  sub->add_option("--points", o.points, "number of sweep or curve points");
  sub->add_flag("--strict", o.strict, "exit 4 when a validity flag fails");
  sub->add_option("--preset", o.preset, "hydrogen, nd144 or soft-alpha");
}

/// `--key value` and `--key=value` pairs left over by the parser.
Config overrides(const std::vector<std::string>& extras) {
  Config c;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& a = extras[i];
    if (a.rfind("--", 0) != 0 || a.size() <= 2) throw ConfigError("unexpected argument '" + a + "'");
    std::string key = a.substr(2), value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else {
      if (i + 1 >= extras.size()) throw ConfigError("option '--" + key + "' needs a value");
      value = extras[++i];
    }
    for (char& ch : key)
      if (ch == '-') ch = '_';
    c.set(key, value);
  }
  return c;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write output file " + path);
  f << text;
}

bool flags_ok(const Json& j) {
  if (!j.contains("flags")) return true;
  for (const auto& f : j["flags"])
    if (!f["ok"].get<bool>()) return false;
  return true;
}

int fail(std::ostream& err, int code, const std::string& kind, const std::string& message) {
  Json e;
  e["error"] = {{"kind", kind}, {"message", message}, {"exit_code", code}};
  err << e.dump() << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Euclidean resonance calculator"};
  app.require_subcommand(1, 1);
  Options o;
  const char* names[] = {"resonance", "sweep", "trajectory", "pulse", "scenario", "check"};
  for (const char* n : names) {
    CLI::App* sub = app.add_subcommand(n);
    add_common(sub, o);
    if (std::string(n) == "scenario")
      sub->add_option("name", o.scenario, "hydrogen, metal, alpha, soft-alpha or custom-smooth");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    return fail(err, exit_config, "config", e.what());
  }
  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();

  try {
    Config c;
    if (!o.preset.empty()) c = preset(o.preset);
    if (!o.config_path.empty()) c.merge(load_config(o.config_path));
    c.merge(overrides(sub->remaining()));
    if (o.points) c.set("points", std::to_string(*o.points));
    if (!o.scenario.empty()) c.set("scenario", o.scenario);

    if (command == "resonance" || command == "scenario" || command == "check") {
      if (o.format != "json" && sub->count("--format"))
        throw ConfigError("command '" + command + "' emits JSON reports only");
      const Json j = command == "resonance" ? cmd_resonance(c)
                     : command == "scenario" ? cmd_scenario(c)
                                             : cmd_check(c);
      emit(j.dump(2) + "\n", o.out_path, out);
      if (o.strict && !flags_ok(j)) return fail(err, exit_validity, "validity", "a validity flag failed");
      return exit_ok;
    }
    const CurveTable t = command == "sweep" ? cmd_sweep(c)
                         : command == "trajectory" ? cmd_trajectory(c)
                                                   : cmd_pulse(c);
    emit(o.format == "json" ? t.to_json().dump(2) + "\n" : t.to_csv(), o.out_path, out);
    if (o.strict && !t.all_valid()) return fail(err, exit_validity, "validity", "a validity flag failed");
    return exit_ok;
  } catch (const ConfigError& e) {
    return fail(err, exit_config, "config", e.what());
  } catch (const DomainError& e) {
    return fail(err, exit_config, "config", e.what());
  } catch (const DimensionMismatch& e) {
    return fail(err, exit_config, "config", e.what());
  } catch (const Error& e) {
    return fail(err, exit_solver, "solver", e.what());
  }
}

}  // namespace eres::cli
