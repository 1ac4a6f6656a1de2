#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <thread>

#include "eres/cli.hpp"
#include "eres/pulses.hpp"
#include "eres/quantities.hpp"
#include "eres/scenarios.hpp"
#include "eres/smooth.hpp"
#include "eres/triangular.hpp"

namespace eres::cli {

namespace {

using QK = QuantityKind;
constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr double pi = std::numbers::pi;

UnitSystem system_of(const Config& c) {
  try {
    return unit_system_from_string(c.text_or("system", "atomic"));
  } catch (const Error& e) {
    throw ConfigError(std::string("parameter 'system': ") + e.what());
  }
}

std::string model_of(const Config& c) {
  const std::string m = c.text_or("model", "triangular");
  if (m != "triangular" && m != "coulomb" && m != "tabulated")
    throw ConfigError("parameter 'model': unknown model '" + m +
                      "' (one of triangular, coulomb, tabulated)");
  return m;
}

PulseShape shape_of(const Config& c, const std::string& fallback) {
  try {
    return pulse_shape_from_string(c.text_or("shape", fallback));
  } catch (const Error& e) {
    throw ConfigError(std::string("parameter 'shape': ") + e.what());
  }
}

double to_eV(double v, UnitSystem s) { return energy_to_lab_eV(v, s); }
double to_s(double v, UnitSystem s) { return time_to_seconds(v, s); }
double to_cm(double v, UnitSystem s) {
  return convert({v, dims::length, s}, UnitSystem::lab).value;
}
double to_field(double v, UnitSystem s) { return field_to_eV_per_cm(v, s); }

BarrierSpec barrier_of(const Config& c) {
  LabBarrier lab;
  lab.V_eV = c.quantity("V", QK::energy);
  lab.E_eV = c.quantity("E", QK::energy);
  lab.field_eV_per_cm = c.quantity("field", QK::field);
  lab.mass_eV = c.quantity("mass", QK::mass);
  lab.target = system_of(c);
  if (!(lab.mass_eV > 0.0)) throw ConfigError("parameter 'mass' must be positive");
  if (!(lab.field_eV_per_cm > 0.0)) throw ConfigError("parameter 'field' must be positive");
  if (!(lab.V_eV > lab.E_eV)) throw ConfigError("parameter 'E' must lie below 'V'");
  return to_natural(lab);
}

struct SmoothSetup {
  PotentialModel pot = PotentialModel::triangular(1.0, 1.0, 1.0);
  UnitSystem system = UnitSystem::atomic;
  double E = 0.0;
};

SmoothSetup smooth_of(const Config& c) {
  SmoothSetup s;
  s.system = system_of(c);
  const std::string model = model_of(c);
  const std::string ekey = c.has("E") ? "E" : "energy";
  if (model == "triangular") {
    const BarrierSpec spec = barrier_of(c);
    s.pot = PotentialModel::triangular(spec.V, spec.E0, spec.m);
    s.E = spec.E;
    return s;
  }
  if (model == "tabulated") {
    const TabulatedFile f = read_tabulated_file(c.text("potential_file"));
    s.system = f.units;
    s.pot = PotentialModel::tabulated(f.x, f.v, mass_from_rest_energy_eV(c.quantity("mass", QK::mass), s.system));
    s.E = energy_from_lab_eV(c.quantity(ekey, QK::energy), s.system);
    return s;
  }
  // Coulomb tail beta / x with beta = Z1 Z2 e^2.
  const double e2 = s.system == UnitSystem::nuclear ? constants::alpha : 1.0;
  double beta = 0.0;
  if (c.has("beta"))
    beta = c.quantity("beta", QK::dimensionless);
  else if (c.has("daughter_charge"))
    beta = 2.0 * c.quantity("daughter_charge", QK::dimensionless) * e2;
  else
    beta = c.quantity("charge_product", QK::dimensionless) * e2;
  if (!(beta > 0.0)) throw ConfigError("Coulomb strength must be positive");
  s.pot = PotentialModel::coulomb(beta, mass_from_rest_energy_eV(c.quantity("mass", QK::mass), s.system));
  s.E = energy_from_lab_eV(c.quantity(ekey, QK::energy), s.system);
  if (!(s.E > 0.0)) throw ConfigError("parameter '" + ekey + "' must be positive");
  return s;
}

/// theta from `theta`, or a multiple of `reference`.
double theta_of(const Config& c, UnitSystem sys, const std::string& ratio_key, double reference) {
  if (c.has("theta")) {
    const double t = time_from_seconds(c.quantity("theta", QK::time), sys);
    if (!(t > 0.0)) throw ConfigError("parameter 'theta' must be positive");
    return t;
  }
  const double r = c.quantity_or(ratio_key, QK::dimensionless, 1.0);
  if (!(r > 0.0)) throw ConfigError("parameter '" + ratio_key + "' must be positive");
  return r * reference;
}

double omega_of(const Config& c, UnitSystem sys, double theta) {
  if (c.has("omega")) return 1.0 / time_from_seconds(1.0 / c.quantity("omega", QK::rate), sys);
  const double x = c.quantity_or("omega2theta2", QK::dimensionless, 15.0);
  if (!(x > 0.0)) throw ConfigError("parameter 'omega2theta2' must be positive");
  return std::sqrt(x) / theta;
}

/// Amplitude from `amplitude`, `lambda` (quartic) or `amplitude_over_threshold`.
double amplitude_of(const Config& c, UnitSystem sys, PulseShape shape, double E0, double omega,
                    double theta, const std::function<double()>& threshold) {
  if (c.has("amplitude")) return field_from_eV_per_cm(c.quantity("amplitude", QK::field), sys);
  if (c.has("lambda")) {
    if (shape != PulseShape::quartic_gaussian)
      throw ConfigError("parameter 'lambda' applies to the quartic-gaussian shape");
    return relative_amplitude_for_lambda(c.quantity("lambda", QK::dimensionless), omega, theta) * E0;
  }
  if (c.has("amplitude_over_threshold"))
    return c.quantity("amplitude_over_threshold", QK::dimensionless) * threshold();
  return 0.0;
}

Json flag_json(const std::string& name, bool ok, double value, double limit) {
  return {{"name", name}, {"ok", ok}, {"value", value}, {"limit", limit}};
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json inputs_json(const Config& c) {
  Json j = Json::object();
  for (const auto& [k, v] : c.entries()) j[k] = v;
  return j;
}

Json smooth_block(const SmoothSetup& s, const Pulse& pulse) {
  const UnitSystem u = s.system;
  Json j;
  const double theta0 = theta_of_deltaE(s.pot, s.E, 0.0);
  j["theta0_s"] = to_s(theta0, u);
  const double E_R = resonance_energy_smooth(s.pot, pulse.theta);
  j["E_R_eV"] = to_eV(E_R, u);
  j["eps_T_eV_per_cm"] = to_field(threshold_field(s.pot, pulse.theta, pulse.omega), u);
  if (pulse.theta >= theta0) {
    const double dE = deltaE_of_theta(s.pot, s.E, pulse.theta);
    j["deltaE_eV"] = to_eV(dE, u);
    j["eps_ext_eV_per_cm"] = to_field(extremal_field(s.pot, s.E, pulse.theta, pulse.omega), u);
  } else {
    j["deltaE_eV"] = nullptr;
    j["eps_ext_eV_per_cm"] = nullptr;
  }
  if (pulse.amplitude > 0.0) {
    const double E_ext = extremal_energy(s.pot, pulse.theta, pulse.omega, pulse.amplitude);
    j["E_ext_eV"] = to_eV(E_ext, u);
    j["A_at_E_ext"] = action_smooth(s.pot, E_ext, pulse.theta);
    j["exit_energy_at_E_ext_eV"] = to_eV(E_ext + deltaE_of_theta(s.pot, E_ext, pulse.theta), u);
  }
  return j;
}

}  // namespace

Json cmd_resonance(const Config& c) {
  const std::string model = model_of(c);
  Json j;
  j["command"] = "resonance";
  j["tool"] = tool_version;
  j["inputs"] = inputs_json(c);
  j["model"] = model;
  Json flags = Json::array();

  if (model != "triangular") {
    const SmoothSetup s = smooth_of(c);
    const UnitSystem u = s.system;
    j["unit_system"] = std::string(to_string(u));
    const double theta0 = theta_of_deltaE(s.pot, s.E, 0.0);
    const double theta = theta_of(c, u, "theta_over_theta0", theta0);
    Pulse p;
    p.shape = shape_of(c, "lorentz-gaussian");
    if (p.shape != PulseShape::lorentz_gaussian)
      throw ConfigError("smooth potentials take the lorentz-gaussian shape");
    p.theta = theta;
    p.omega = omega_of(c, u, theta);
    p.amplitude = amplitude_of(c, u, p.shape, 0.0, p.omega, theta,
                               [&] { return threshold_field(s.pot, theta, p.omega); });
    p.validate();
    j["theta_s"] = to_s(theta, u);
    j["omega2theta2"] = p.omega2theta2();
    j["amplitude_eV_per_cm"] = to_field(p.amplitude, u);
    j["smooth"] = smooth_block(s, p);
    const double gap = s.pot.top() - s.E;
    const double ratio = std::isfinite(gap) ? p.omega2theta2() / (gap * theta) : 0.0;
    flags.push_back(flag_json("semiclassical", ratio <= 0.1, ratio, 0.1));
    flags.push_back(flag_json("instant_signal", instant_signal_regime(p), p.omega2theta2(), 4.0));
    j["flags"] = flags;
    return j;
  }

  const BarrierSpec spec = barrier_of(c);
  const UnitSystem u = spec.system;
  j["unit_system"] = std::string(to_string(u));
  const double tR = resonance_theta(spec);
  const double theta = theta_of(c, u, "theta_over_thetaR", tR);
  Pulse p;
  p.shape = shape_of(c, "quartic-gaussian");
  p.theta = theta;
  p.omega = omega_of(c, u, theta);
  const PotentialModel pot = PotentialModel::triangular(spec.V, spec.E0, spec.m);
  p.amplitude = amplitude_of(c, u, p.shape, spec.E0, p.omega, theta, [&] {
    if (p.shape != PulseShape::lorentz_gaussian)
      throw ConfigError("'amplitude_over_threshold' applies to the lorentz-gaussian shape");
    return threshold_field(pot, theta, p.omega);
  });
  p.validate();

  const double A0 = static_action(spec);
  j["theta_R_s"] = to_s(tR, u);
  j["theta_s"] = to_s(theta, u);
  j["theta_over_thetaR"] = theta / tR;
  j["omega2theta2"] = p.omega2theta2();
  j["amplitude_eV_per_cm"] = to_field(p.amplitude, u);
  j["A0"] = A0;
  j["tau00_s"] = to_s(tau00(spec), u);
  const double dt = exit_packet_duration(spec, theta);
  j["delta_t_s"] = to_s(dt, u);
  j["delta_t_over_theta"] = dt / theta;
  j["lambda_T"] = lambda_threshold;

  if (p.shape == PulseShape::quartic_gaussian) {
    const EffectiveAmplitude ea = effective_amplitude(p, spec.E0);
    j["lambda"] = ea.lambda;
    const ResonanceParams rp = resonance_params(spec, theta, ea.lambda);
    j["E_R_eV"] = to_eV(rp.E_R, u);
    j["E_ext_eV"] = to_eV(rp.E_ext, u);
    j["E1_eV"] = to_eV(rp.E1, u);
    j["E2_eV"] = to_eV(rp.E2, u);
    Json branches = Json::array();
    Json selected = nullptr;
    if (ea.lambda > 0.0) {
      const BranchSet bs = solve_branches(spec, StepProfile{ea.lambda, theta});
      for (const Branch& b : bs.branches) {
        branches.push_back({{"kind", std::string(to_string(b.kind))},
                            {"tau1_s", to_s(b.tau1, u)},
                            {"action", b.action},
                            {"deltaE_eV", to_eV(b.deltaE, u)},
                            {"x1_cm", to_cm(b.x1, u)},
                            {"stable", b.stable},
                            {"escapes", b.escapes},
                            {"curvature_resolved", b.curvature_resolved}});
      }
      if (bs.selected) selected = std::string(to_string(bs.branches[*bs.selected].kind));
    }
    j["branches"] = branches;
    j["selected"] = selected;
    const DecayResult d = decay(spec, p);
    j["decay"] = {{"A", d.A},
                  {"A0", d.A0},
                  {"deltaE_eV", to_eV(d.deltaE, u)},
                  {"exit_energy_eV", to_eV(d.exit_energy, u)},
                  {"delta_t_s", to_s(d.delta_t, u)},
                  {"sigma1", number(d.sigma1)},
                  {"W_exponent", d.W_exponent},
                  {"prefactor", number(d.prefactor)}};
    flags.push_back(flag_json("instant_signal", ea.regime_ok, p.omega2theta2(), 2.0));
  } else {
    j["smooth"] = smooth_block({pot, u, spec.E}, p);
    flags.push_back(flag_json("instant_signal", instant_signal_regime(p), p.omega2theta2(), 4.0));
  }
  const SemiclassicalCheck sc = semiclassical_check(spec, p);
  const double ratio = p.shape == PulseShape::quartic_gaussian ? sc.triangular_ratio : sc.smooth_ratio;
  flags.push_back(flag_json("semiclassical", sc.ok, ratio, 0.1));
  flags.push_back(flag_json("static_suppressed", A0 >= 10.0, A0, 10.0));
  j["flags"] = flags;
  return j;
}

CurveTable cmd_sweep(const Config& c) {
  const std::string var = c.text("variable");
  QK kind;
  if (var == "E")
    kind = QK::energy;
  else if (var == "theta")
    kind = QK::time;
  else if (var == "lambda")
    kind = QK::dimensionless;
  else if (var == "eps")
    kind = QK::field;
  else
    throw ConfigError("parameter 'variable': unknown sweep variable '" + var +
                      "' (one of E, theta, lambda, eps)");
  const double from = c.quantity("from", kind);
  const double to = c.quantity("to", kind);
  if (!(from != to)) throw ConfigError("sweep range is empty: 'from' equals 'to'");
  const double pts = c.quantity_or("points", QK::dimensionless, 101.0);
  if (!(pts >= 2.0 && pts <= 1e6) || pts != std::floor(pts))
    throw ConfigError("parameter 'points' must be an integer in [2, 1e6]");
  const std::size_t n = static_cast<std::size_t>(pts);
  if (model_of(c) != "triangular") throw ConfigError("sweeps run on the triangular model");

  const BarrierSpec base = barrier_of(c);
  const UnitSystem u = base.system;
  const double tR = resonance_theta(base);
  const double theta_base = theta_of(c, u, "theta_over_thetaR", tR);
  const double w2t2 = c.quantity_or("omega2theta2", QK::dimensionless, 15.0);
  std::optional<double> lambda_base;
  if (c.has("lambda")) lambda_base = c.quantity("lambda", QK::dimensionless);
  const std::optional<double> eps_base = c.optional_quantity("amplitude", QK::field);
  if (var != "lambda" && var != "eps" && !lambda_base && !eps_base)
    throw ConfigError("missing required parameter 'lambda' (or 'amplitude')");

  CurveTable t;
  t.columns = {{var, kind == QK::energy   ? "eV"
                     : kind == QK::time   ? "s"
                     : kind == QK::field  ? "eV/cm"
                                          : ""},
               {"lambda", ""},      {"A0", ""},          {"E_R", "eV"},
               {"E_ext", "eV"},     {"A_pre_kick", ""},  {"A_jump", ""},
               {"A_post_kick", ""}, {"selected", "0=pre 1=jump 2=post -1=none"},
               {"deltaE", "eV"},    {"W_exponent", "ln W"}, {"status", "0=ok 1=failed"}};

  auto row = [&](std::size_t i) {
    const double x = from + (to - from) * static_cast<double>(i) / static_cast<double>(n - 1);
    std::vector<double> r(t.columns.size(), nan);
    r[0] = x;
    try {
      BarrierSpec spec = base;
      double theta = theta_base;
      if (var == "E") spec.E = energy_from_lab_eV(x, u);
      if (var == "theta") theta = time_from_seconds(x, u);
      spec.validate();
      const double omega = std::sqrt(w2t2) / theta;
      double lam = 0.0;
      if (var == "lambda") {
        lam = x;
      } else if (var == "eps" || !lambda_base) {
        Pulse p;
        p.shape = PulseShape::quartic_gaussian;
        p.theta = theta;
        p.omega = omega;
        p.amplitude = field_from_eV_per_cm(var == "eps" ? x : *eps_base, u);
        lam = effective_amplitude(p, spec.E0).lambda;
      } else {
        lam = *lambda_base;
      }
      r[1] = lam;
      const double A0 = static_action(spec);
      r[2] = A0;
      const ResonanceParams rp = resonance_params(spec, theta, lam);
      r[3] = to_eV(rp.E_R, u);
      r[4] = to_eV(rp.E_ext, u);
      double W = -A0;
      r[8] = -1.0;
      r[9] = 0.0;
      if (lam > 0.0) {
        const BranchSet bs = solve_branches(spec, StepProfile{lam, theta});
        for (const Branch& b : bs.branches) r[5 + static_cast<int>(b.kind)] = b.action;
        if (bs.selected) {
          const Branch& b = bs.branches[*bs.selected];
          r[8] = static_cast<double>(b.kind);
          r[9] = to_eV(b.deltaE, u);
          W = -std::min(A0, b.action);
        }
      }
      r[10] = W;
      r[11] = 0.0;
    } catch (const Error&) {
      r[11] = 1.0;
    }
    return r;
  };

  std::vector<std::vector<double>> rows(n);
  std::atomic<std::size_t> next{0};
  const std::size_t workers =
      std::min<std::size_t>({n, std::max(1u, std::thread::hardware_concurrency()), 16});
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) rows[i] = row(i);
      });
  }
  for (auto& r : rows) t.add_row(std::move(r));

  t.metadata = {{"tool", tool_version}, {"command", "sweep"}, {"unit_system", std::string(to_string(u))},
                {"profile", "step (instant quartic-gaussian limit)"},
                {"theta_s", format_number(to_s(theta_base, u))},
                {"lambda_T", format_number(lambda_threshold)}};
  for (const auto& [k, v] : c.entries()) t.metadata.emplace_back("input:" + k, v);
  std::size_t failed = 0;
  for (const auto& r : t.rows) failed += r[11] != 0.0;
  t.metadata.emplace_back("failed_rows", std::to_string(failed));
  return t;
}

CurveTable cmd_trajectory(const Config& c) {
  const SmoothSetup s = smooth_of(c);
  const UnitSystem u = s.system;
  const double theta0 = theta_of_deltaE(s.pot, s.E, 0.0);
  const double theta = theta_of(c, u, "theta_over_theta0", theta0);
  Pulse p;
  p.shape = shape_of(c, "lorentz-gaussian");
  if (p.shape != PulseShape::lorentz_gaussian)
    throw ConfigError("trajectories take the lorentz-gaussian shape");
  p.theta = theta;
  p.omega = omega_of(c, u, theta);
  if (c.text_or("amplitude", "") == "extremal")
    p.amplitude = extremal_field(s.pot, s.E, theta, p.omega);
  else
    p.amplitude = amplitude_of(c, u, p.shape, 0.0, p.omega, theta,
                               [&] { return threshold_field(s.pot, theta, p.omega); });
  p.validate();
  ContourOptions opt;
  if (p.amplitude == 0.0) opt.deltaE = 0.0;
  const EuclideanTrajectory tr = integrate_euclidean(s.pot, p, s.E, theta, opt);

  const std::string un(to_string(u));
  CurveTable t;
  t.columns = {{"segment", ""},        {"s", "contour"},       {"re_t", un},
               {"im_t", un},          {"re_x", un},           {"im_x", un},
               {"re_velocity", un},   {"im_velocity", un},    {"re_energy", un},
               {"im_energy", un}};
  for (const TrajectorySample& x : tr.samples)
    t.add_row({static_cast<double>(x.segment), x.s, x.t.real(), x.t.imag(), x.x.real(), x.x.imag(),
               x.velocity.real(), x.velocity.imag(), x.energy.real(), x.energy.imag()});
  const double level = std::abs(s.E + tr.deltaE) + 1.0;
  t.metadata = {{"tool", tool_version},
                {"command", "trajectory"},
                {"unit_system", un},
                {"segments", "1: t = i tau; 2: loop around t = i theta; 3: t = i(theta - r) - s"},
                {"theta", format_number(theta)},
                {"E", format_number(s.E)},
                {"deltaE", format_number(tr.deltaE)},
                {"deltaE_measured", format_number(tr.deltaE_measured.real())},
                {"kick_expected", format_number(tr.kick_expected)},
                {"kick_measured", format_number(std::abs(tr.impulse))},
                {"A_measured", format_number(tr.A_measured)},
                {"tolerance:ode_rel", format_number(opt.rel_tol)},
                {"tolerance:ode_abs", format_number(opt.abs_tol)},
                {"valid:energy_conservation", tr.energy_drift1 <= 1e-6 * level ? "true" : "false"}};
  for (const auto& [k, v] : c.entries()) t.metadata.emplace_back("input:" + k, v);
  return t;
}

CurveTable cmd_pulse(const Config& c) {
  std::vector<PulseShape> shapes;
  {
    const std::string list = c.text_or("shapes", "lorentz-gaussian,odd-gaussian");
    std::size_t start = 0;
    while (start <= list.size()) {
      const auto comma = list.find(',', start);
      const std::string name = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      try {
        shapes.push_back(pulse_shape_from_string(name));
      } catch (const Error& e) {
        throw ConfigError(std::string("parameter 'shapes': ") + e.what());
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  const double w2t2 = c.quantity_or("omega2theta2", QK::dimensionless, 15.0);
  if (!(w2t2 > 0.0)) throw ConfigError("parameter 'omega2theta2' must be positive");
  const double pts = c.quantity_or("points", QK::dimensionless, 400.0);
  if (!(pts >= 2.0 && pts <= 1e6) || pts != std::floor(pts))
    throw ConfigError("parameter 'points' must be an integer in [2, 1e6]");
  const double span = c.quantity_or("span", QK::dimensionless, 3.0);
  if (!(span > 0.0)) throw ConfigError("parameter 'span' must be positive");

  std::vector<double> grid;
  const std::size_t n = static_cast<std::size_t>(pts);
  for (std::size_t i = 0; i < n; ++i) grid.push_back(-span + 2.0 * span * static_cast<double>(i) / static_cast<double>(n - 1));
  if (std::find(grid.begin(), grid.end(), 0.0) == grid.end())
    grid.insert(std::upper_bound(grid.begin(), grid.end(), 0.0), 0.0);

  CurveTable t;
  t.columns.push_back({"t_over_theta", ""});
  std::vector<Pulse> pulses;
  for (PulseShape sh : shapes) {
    Pulse p;
    p.shape = sh;
    p.amplitude = 1.0;
    p.theta = 1.0;
    p.omega = sh == PulseShape::quartic_gaussian ? std::pow(w2t2, 0.25) : std::sqrt(w2t2);
    pulses.push_back(p);
    t.columns.push_back({std::string(to_string(sh)), "E/eps"});
  }
  std::optional<std::size_t> lorentz, odd;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    if (shapes[i] == PulseShape::lorentz_gaussian) lorentz = i + 1;
    if (shapes[i] == PulseShape::odd_gaussian) odd = i + 1;
  }
  double peak = 0.0, deviation = 0.0;
  for (double x : grid) {
    std::vector<double> r{x};
    for (const Pulse& p : pulses) r.push_back(evaluate(p, x));
    if (lorentz && odd) {
      peak = std::max(peak, std::abs(r[*lorentz]));
      deviation = std::max(deviation, std::abs(r[*lorentz] - r[*odd]));
    }
    t.add_row(std::move(r));
  }
  t.metadata = {{"tool", tool_version}, {"command", "pulse"}, {"omega2theta2", format_number(w2t2)},
                {"grid", "points on [-span, span] plus the t = 0 sample"}};
  if (lorentz && odd) {
    t.metadata.emplace_back("max_deviation_over_peak", format_number(deviation / peak));
    t.metadata.emplace_back("valid:deviation_below_10_percent", deviation <= 0.1 * peak ? "true" : "false");
  }
  for (const auto& [k, v] : c.entries()) t.metadata.emplace_back("input:" + k, v);
  return t;
}

namespace {

Json report_json(const ScenarioReport& r) {
  Json j;
  j["scenario"] = r.scenario;
  j["tool"] = tool_version;
  j["conversion"] = r.conversion;
  Json entries = Json::object();
  for (const ReportEntry& e : r.entries) {
    entries[e.key] = {{"unit", e.unit},
                      {"computed_value", number(e.computed)},
                      {"reference_value", e.reference ? Json(*e.reference) : Json(nullptr)}};
  }
  j["entries"] = entries;
  Json flags = Json::array();
  for (const ValidityFlag& f : r.flags) flags.push_back(flag_json(f.name, f.ok, f.value, f.limit));
  j["flags"] = flags;
  j["notes"] = r.notes;
  return j;
}

ScenarioReport custom_smooth_report(const Config& c) {
  const SmoothSetup s = smooth_of(c);
  const UnitSystem u = s.system;
  const double theta0 = theta_of_deltaE(s.pot, s.E, 0.0);
  const double theta = theta_of(c, u, "theta_over_theta0", theta0);
  const double omega = omega_of(c, u, theta);
  ScenarioReport r;
  r.scenario = "custom-smooth";
  r.conversion = "internal " + std::string(to_string(u)) + " units (hbar = 1); lab values converted";
  r.entries.push_back({"E", "eV", to_eV(s.E, u), {}});
  r.entries.push_back({"theta", "s", to_s(theta, u), {}});
  r.entries.push_back({"theta0", "s", to_s(theta0, u), {}});
  r.entries.push_back({"omega2theta2", "", omega * omega * theta * theta, {}});
  const double E_R = resonance_energy_smooth(s.pot, theta);
  r.entries.push_back({"E_R", "eV", to_eV(E_R, u), {}});
  r.entries.push_back({"eps_T", "eV/cm", to_field(threshold_field(s.pot, theta, omega), u), {}});
  if (theta >= theta0) {
    r.entries.push_back({"deltaE", "eV", to_eV(deltaE_of_theta(s.pot, s.E, theta), u), {}});
    r.entries.push_back({"eps_ext", "eV/cm", to_field(extremal_field(s.pot, s.E, theta, omega), u), {}});
    r.entries.push_back({"A_at_E", "", action_smooth(s.pot, s.E, theta), {}});
  }
  if (const auto a = c.optional_quantity("amplitude", QK::field)) {
    const double E_ext = extremal_energy(s.pot, theta, omega, field_from_eV_per_cm(*a, u));
    r.entries.push_back({"E_ext", "eV", to_eV(E_ext, u), {}});
    r.entries.push_back({"A_at_E_ext", "", action_smooth(s.pot, E_ext, theta), {}});
  }
  const double gap = s.pot.top() - s.E;
  const double ratio = std::isfinite(gap) ? omega * omega * theta / gap : 0.0;
  r.flags.push_back({"semiclassical", ratio <= 0.1, ratio, 0.1});
  r.notes.push_back("the action at E is the resonance action only when E is the extremal energy");
  return r;
}

}  // namespace

Json cmd_scenario(const Config& given) {
  const std::string name = given.text("scenario");
  ScenarioReport r;
  if (name == "hydrogen") {
    Config c = preset("hydrogen");
    c.merge(given);
    const double binding = c.quantity("V", QK::energy) - c.quantity("E", QK::energy);
    r = hydrogen_report(c.quantity("field", QK::field),
                        c.quantity_or("omega2theta2", QK::dimensionless, 15.0), binding,
                        c.quantity_or("theta_over_thetaR", QK::dimensionless, 1.0));
  } else if (name == "metal") {
    MetalInputs in;
    in.work_function_eV = given.quantity_or("work_function", QK::energy, in.work_function_eV);
    in.field_eV_per_cm = given.quantity_or("field", QK::field, in.field_eV_per_cm);
    in.period_s = given.quantity_or("period", QK::time, in.period_s);
    in.density_per_cm3 = given.quantity_or("density_per_cm3", QK::dimensionless, in.density_per_cm3);
    in.fermi_velocity_cm_per_s =
        given.quantity_or("fermi_velocity_cm_per_s", QK::dimensionless, in.fermi_velocity_cm_per_s);
    r = metal_emission_report(in);
  } else if (name == "alpha" || name == "soft-alpha") {
    Config c = preset(name == "alpha" ? "nd144" : "soft-alpha");
    c.merge(given);
    AlphaSpec s;
    s.beta = c.has("beta") ? c.quantity("beta", QK::dimensionless)
                           : 2.0 * c.quantity("daughter_charge", QK::dimensionless) * constants::alpha;
    s.E = c.quantity("energy", QK::energy) * 1e-6;
    s.m = c.quantity("mass", QK::mass) * 1e-6;
    s.omega2theta2 = c.quantity("omega2theta2", QK::dimensionless);
    s.validate();
    r = alpha_report(s, c.optional_quantity("theta_over_thetaR", QK::dimensionless));
  } else if (name == "custom-smooth") {
    r = custom_smooth_report(given);
  } else {
    throw ConfigError("unknown scenario '" + name +
                      "' (one of hydrogen, metal, alpha, soft-alpha, custom-smooth)");
  }
  Json j = report_json(r);
  j["inputs"] = inputs_json(given);
  return j;
}

Json cmd_check(const Config& c) {
  const BarrierSpec spec = barrier_of(c);
  const UnitSystem u = spec.system;
  const double tR = resonance_theta(spec);
  const double theta = theta_of(c, u, "theta_over_thetaR", tR);
  Pulse p;
  p.shape = shape_of(c, "lorentz-gaussian");
  p.theta = theta;
  p.omega = omega_of(c, u, theta);
  p.validate();
  const SemiclassicalCheck sc = semiclassical_check(spec, p);
  const double gamma_lab = c.quantity_or("gamma", QK::rate, 0.0);
  const double gamma = gamma_lab > 0.0 ? 1.0 / time_from_seconds(1.0 / gamma_lab, u) : 0.0;
  const DissipationBound d = dissipation_bound(theta, gamma, p.omega2theta2(), spec.V - spec.E);

  Json j;
  j["command"] = "check";
  j["tool"] = tool_version;
  j["inputs"] = inputs_json(c);
  j["unit_system"] = std::string(to_string(u));
  j["theta_s"] = to_s(theta, u);
  j["omega2theta2"] = p.omega2theta2();
  j["semiclassical"] = {{"ok", sc.ok},
                        {"triangular_ratio", number(sc.triangular_ratio)},
                        {"smooth_ratio", sc.smooth_ratio}};
  j["dissipation"] = {{"ok", d.ok},
                      {"gamma_per_s", gamma_lab},
                      {"gamma_c_per_s", 1.0 / to_s(theta, u)},
                      {"margin", number(d.margin)},
                      {"signal_ratio", d.signal_ratio},
                      {"friction_ratio", d.friction_ratio},
                      {"chain_ok", d.chain_ok},
                      {"note", "gamma_c ~ 1/theta taken as the equality threshold"}};
  Json flags = Json::array();
  const double ratio = p.shape == PulseShape::quartic_gaussian ? sc.triangular_ratio : sc.smooth_ratio;
  flags.push_back(flag_json("semiclassical", sc.ok, ratio, 0.1));
  flags.push_back(flag_json("dissipation", d.ok, d.friction_ratio, 1.0));
  flags.push_back(flag_json("restriction_chain", d.chain_ok, d.signal_ratio, 0.1));
  j["flags"] = flags;
  return j;
}

}  // namespace eres::cli
