#include "eres/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "eres/errors.hpp"
#include "eres/triangular.hpp"

namespace eres {

using numerics::cplx;

namespace {

using std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

}  // namespace

std::string_view to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::triangular:
      return "triangular";
    case PotentialKind::coulomb:
      return "coulomb";
    case PotentialKind::tabulated:
      return "tabulated";
  }
  return "?";
}

PotentialModel PotentialModel::triangular(double V, double E0, double m) {
  if (!(E0 > 0.0)) throw DomainError("static field E0 must be positive");
  if (!(m > 0.0)) throw DomainError("mass must be positive");
  PotentialModel p;
  p.kind_ = PotentialKind::triangular;
  p.m_ = m;
  p.a_ = V;
  p.b_ = E0;
  p.lo_ = 0.0;
  p.hi_ = inf;
  return p;
}

PotentialModel PotentialModel::coulomb(double beta, double m) {
  if (!(beta > 0.0)) throw DomainError("coulomb strength beta must be positive");
  if (!(m > 0.0)) throw DomainError("mass must be positive");
  PotentialModel p;
  p.kind_ = PotentialKind::coulomb;
  p.m_ = m;
  p.a_ = beta;
  p.lo_ = 0.0;
  p.hi_ = inf;
  return p;
}

PotentialModel PotentialModel::tabulated(std::vector<double> x, std::vector<double> v, double m,
                                         std::optional<double> inner_edge) {
  if (!(m > 0.0)) throw DomainError("mass must be positive");
  PotentialModel p;
  p.kind_ = PotentialKind::tabulated;
  p.m_ = m;
  p.table_.emplace(std::move(x), std::move(v));
  p.lo_ = p.table_->front();
  p.hi_ = p.table_->back();
  if (inner_edge && (*inner_edge < p.lo_ || *inner_edge > p.hi_))
    throw DomainError("inner edge outside the tabulated domain");
  p.inner_ = inner_edge;
  return p;
}

double PotentialModel::V(double x) const {
  switch (kind_) {
    case PotentialKind::triangular:
      return a_ - b_ * x;
    case PotentialKind::coulomb:
      return a_ / x;
    case PotentialKind::tabulated:
      return (*table_)(x);
  }
  return 0.0;
}

double PotentialModel::dV(double x) const {
  switch (kind_) {
    case PotentialKind::triangular:
      return -b_;
    case PotentialKind::coulomb:
      return -a_ / (x * x);
    case PotentialKind::tabulated:
      return table_->derivative(x);
  }
  return 0.0;
}

double PotentialModel::rise(double x, double dx) const {
  switch (kind_) {
    case PotentialKind::triangular:
      return -b_ * dx;
    case PotentialKind::coulomb:
      return -a_ * dx / (x * (x + dx));
    case PotentialKind::tabulated:
      return table_->difference(x, dx);
  }
  return 0.0;
}

cplx PotentialModel::V(cplx x) const {
  switch (kind_) {
    case PotentialKind::triangular:
      return a_ - b_ * x;
    case PotentialKind::coulomb:
      return a_ / x;
    case PotentialKind::tabulated:
      return (*table_)(x);
  }
  return 0.0;
}

cplx PotentialModel::dV(cplx x) const {
  switch (kind_) {
    case PotentialKind::triangular:
      return -b_;
    case PotentialKind::coulomb:
      return -a_ / (x * x);
    case PotentialKind::tabulated:
      return table_->derivative(x);
  }
  return 0.0;
}

double PotentialModel::top() const {
  switch (kind_) {
    case PotentialKind::triangular:
      return a_;
    case PotentialKind::coulomb:
      return inf;
    case PotentialKind::tabulated: {
      const auto v = table_->values();
      return *std::max_element(v.begin(), v.end());
    }
  }
  return inf;
}

double PotentialModel::inner_edge(double E) const {
  if (kind_ != PotentialKind::tabulated) return 0.0;
  if (inner_) return *inner_;
  const auto roots = turning_points(*this, E);
  return roots.empty() ? lo_ : roots.front();
}

TabulatedFile parse_tabulated(std::string_view text) {
  TabulatedFile out;
  bool have_units = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = line;
    const auto hash = body.find('#');
    std::string comment;
    if (hash != std::string::npos) {
      comment = body.substr(hash + 1);
      body = body.substr(0, hash);
    }
    for (const std::string* part : {&body, &comment}) {
      const auto key = part->find("units:");
      if (key == std::string::npos) continue;
      std::istringstream val(part->substr(key + 6));
      std::string name;
      val >> name;
      out.units = unit_system_from_string(name);
      have_units = true;
      if (part == &body) body.clear();
    }
    std::istringstream row(body);
    double x, v;
    if (!(row >> x)) continue;
    if (!(row >> v)) {
      throw DomainError("tabulated potential line " + std::to_string(lineno) +
                        ": expected two columns");
    }
    out.x.push_back(x);
    out.v.push_back(v);
  }
  if (!have_units) throw DomainError("tabulated potential lacks a 'units:' header");
  if (out.x.size() < 2) throw DomainError("tabulated potential needs at least two samples");
  for (std::size_t i = 1; i < out.x.size(); ++i)
    if (!(out.x[i] > out.x[i - 1]))
      throw DomainError("tabulated potential: x must be strictly increasing");
  return out;
}

TabulatedFile read_tabulated_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open tabulated potential '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_tabulated(ss.str());
}

std::vector<double> turning_points(const PotentialModel& pot, double level) {
  switch (pot.kind()) {
    case PotentialKind::triangular: {
      const double x = (pot.barrier_height() - level) / pot.field();
      if (x < 0.0) return {};
      return {x};
    }
    case PotentialKind::coulomb:
      if (!(level > 0.0)) return {};
      return {pot.beta() / level};
    case PotentialKind::tabulated:
      break;
  }
  std::vector<double> roots;
  const auto knots = pot.knots();
  auto f = [&](double x) { return pot.V(x) - level; };
  numerics::RootOptions ro;
  ro.abs_tol = 1e-14 * (pot.domain_hi() - pot.domain_lo());
  ro.rel_tol = 1e-15;
  double f_prev = f(knots[0]);
  if (f_prev == 0.0) roots.push_back(knots[0]);
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const double fi = f(knots[i]);
    if (fi == 0.0)
      roots.push_back(knots[i]);
    else if (f_prev != 0.0 && (f_prev < 0.0) != (fi < 0.0))
      roots.push_back(numerics::find_root(f, knots[i - 1], knots[i], ro).root);
    f_prev = fi;
  }
  return roots;
}

std::span<const double> PotentialModel::knots() const {
  if (!table_) return {};
  return table_->knots();
}

double outer_turning_point(const PotentialModel& pot, double level) {
  const auto roots = turning_points(pot, level);
  if (roots.empty()) {
    std::ostringstream msg;
    msg << "no turning point at level " << level << " for the " << to_string(pot.kind())
        << " potential on [" << pot.domain_lo() << ", " << pot.domain_hi() << "]";
    throw RootNotFound(msg.str());
  }
  return roots.back();
}

namespace {

// integral_{x0}^{x1} g(V(x) - level) dx with x = x0 + v^2 on the inner half
// and x = x1 - u^2 on the outer half, so square-root endpoints become smooth.
// V(x1) = level exactly; inner_gap = V(x0) - level.
template <class G>
double barrier_integral(const PotentialModel& pot, double x0, double x1, double inner_gap, G g) {
  const double xm = 0.5 * (x0 + x1);
  const bool singular_edge = pot.kind() == PotentialKind::coulomb && x0 == 0.0;
  const double s1 = std::abs(pot.dV(x1));
  const double s0 = singular_edge ? 0.0 : std::abs(pot.dV(x0));
  numerics::QuadOptions opt;
  opt.rel_tol = 1e-12;
  opt.max_intervals = 20000;
  auto outer = [&](double u) {
    double f = pot.rise(x1, -u * u);
    if (!(f > 0.0)) f = s1 * u * u;
    return 2.0 * u * g(f);
  };
  auto inner = [&](double v) {
    double f = singular_edge ? pot.V(v * v) - pot.V(x1) : pot.rise(x0, v * v) + inner_gap;
    if (!(f > 0.0)) f = s0 * v * v;
    return 2.0 * v * g(f);
  };
  // knots of a tabulated model become break points in u and v
  std::vector<double> outer_breaks, inner_breaks;
  for (double k : pot.knots()) {
    if (k > xm && k < x1) outer_breaks.push_back(std::sqrt(x1 - k));
    if (k > x0 && k < xm) inner_breaks.push_back(std::sqrt(k - x0));
  }
  return numerics::integrate(outer, 0.0, std::sqrt(x1 - xm), opt, outer_breaks).value +
         numerics::integrate(inner, 0.0, std::sqrt(xm - x0), opt, inner_breaks).value;
}

struct Path {
  double x0, x1, level, inner_gap;
};

Path barrier_path(const PotentialModel& pot, double E, double dE) {
  if (dE > 0.0) throw DomainError("energy gain must be non-positive");
  const double level = E + dE;
  const double x0 = pot.inner_edge(E);
  const double x1 = outer_turning_point(pot, level);
  if (!(x1 > x0)) {
    std::ostringstream msg;
    msg << "no barrier: outer turning point " << x1 << " does not exceed inner edge " << x0;
    throw DomainError(msg.str());
  }
  double gap = pot.V(x0) - level;
  if (pot.kind() == PotentialKind::tabulated && 
      std::abs(pot.V(x0) - E) <= 1e-12 * (std::abs(E) + std::abs(pot.top())))
    gap = -dE;
  return {x0, x1, level, gap};
}

double dE_lower_bound(const PotentialModel& pot, double E) {
  switch (pot.kind()) {
    case PotentialKind::triangular:
      return -inf;
    case PotentialKind::coulomb:
      return -E;
    case PotentialKind::tabulated:
      return pot.V(pot.domain_hi()) - E;
  }
  return -inf;
}

// Candidate gains walking away from zero towards the admissible bound.
double dE_candidate(double bound, double scale, int k) {
  if (std::isinf(bound)) return -scale * std::ldexp(1.0, k - 8);
  return bound * (1.0 - std::ldexp(1.0, -k));
}

struct EnergyWindow {
  double floor, top, scale;
  double at(double u) const {
    if (std::isinf(floor)) return top - scale * (1.0 - u) / u;
    if (std::isinf(top)) return floor + scale * u / (1.0 - u);
    return floor + u * (top - floor);
  }
};

EnergyWindow energy_window(const PotentialModel& pot, double theta) {
  const double m = pot.mass();
  switch (pot.kind()) {
    case PotentialKind::triangular:
      return {-inf, pot.top(), theta * theta * pot.field() * pot.field() / m};
    case PotentialKind::coulomb:
      return {0.0, inf, std::cbrt(pot.beta() * pot.beta() * m / (theta * theta))};
    case PotentialKind::tabulated: {
      const double tail = pot.V(pot.domain_hi());
      const double head = pot.V(pot.domain_lo());
      const double floor = head < pot.top() ? std::max(tail, head) : tail;
      return {floor, pot.top(), pot.top() - floor};
    }
  }
  return {-inf, inf, 1.0};
}

double safe_theta_static(const PotentialModel& pot, double E) {
  try {
    return theta_of_deltaE(pot, E, 0.0);
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

// Lowest energy at which theta is attainable: theta_static(E) = theta.
double static_energy(const PotentialModel& pot, double theta, const EnergyWindow& w, double& u_out) {
  constexpr int n = 128;
  auto g = [&](double u) { return safe_theta_static(pot, w.at(u)) - theta; };
  double u_prev = 0.0, g_prev = std::numeric_limits<double>::quiet_NaN();
  for (int k = 1; k < n; ++k) {
    const double u = static_cast<double>(k) / n;
    const double gu = g(u);
    if (std::isfinite(g_prev) && std::isfinite(gu) && g_prev > 0.0 && gu <= 0.0) {
      numerics::RootOptions ro;
      ro.abs_tol = 1e-16;
      ro.rel_tol = 1e-15;
      u_out = gu == 0.0 ? u : numerics::find_root(g, u_prev, u, ro).root;
      return w.at(u_out);
    }
    u_prev = u;
    g_prev = gu;
  }
  std::ostringstream msg;
  msg << "theta = " << theta << " is not reached by the static path for any energy in ("
      << w.floor << ", " << w.top << ")";
  throw RootNotFound(msg.str());
}

}  // namespace

double theta_of_deltaE(const PotentialModel& pot, double E, double dE) {
  const Path p = barrier_path(pot, E, dE);
  const double integral =
      barrier_integral(pot, p.x0, p.x1, p.inner_gap, [](double f) { return 1.0 / std::sqrt(f); });
  return std::sqrt(pot.mass() / 2.0) * integral;
}

DeltaERange attainable_theta(const PotentialModel& pot, double E) {
  DeltaERange r;
  r.theta_min = theta_of_deltaE(pot, E, 0.0);
  r.dE_min = dE_lower_bound(pot, E);
  if (std::isinf(r.dE_min) || pot.kind() == PotentialKind::coulomb) {
    r.theta_max = inf;
  } else {
    r.theta_max = theta_of_deltaE(pot, E, r.dE_min * (1.0 - 1e-9));
  }
  return r;
}

double deltaE_of_theta(const PotentialModel& pot, double E, double theta) {
  if (!(theta > 0.0)) throw DomainError("theta must be positive");
  const double theta0 = theta_of_deltaE(pot, E, 0.0);
  if (std::abs(theta - theta0) <= 1e-14 * theta) return 0.0;
  const double bound = dE_lower_bound(pot, E);
  if (!(bound < 0.0)) throw DomainError("no admissible negative energy gain at this energy");
  auto out_of_range = [&] {
    const DeltaERange r = attainable_theta(pot, E);
    std::ostringstream msg;
    msg << "theta = " << theta << " outside the attainable interval [" << r.theta_min << ", "
        << r.theta_max << ")";
    return DomainError(msg.str());
  };
  if (theta < theta0) throw out_of_range();

  double scale = std::abs(E);
  if (pot.kind() == PotentialKind::triangular)
    scale = theta * theta * pot.field() * pot.field() / pot.mass();
  if (!(scale > 0.0)) scale = 1.0;

  double lo = 0.0;
  bool found = false;
  const int k_max = std::isinf(bound) ? 80 : 34;
  for (int k = 1; k <= k_max; ++k) {
    lo = dE_candidate(bound, scale, k);
    if (theta_of_deltaE(pot, E, lo) >= theta) {
      found = true;
      break;
    }
  }
  if (!found) throw out_of_range();

  int crossings = 0;
  double previous = theta0 - theta;
  for (int i = 1; i <= 8; ++i) {
    const double d = lo * i / 8.0;
    const double g = theta_of_deltaE(pot, E, d) - theta;
    if ((g < 0.0) != (previous < 0.0)) ++crossings;
    previous = g;
  }
  if (crossings > 1) {
    std::ostringstream msg;
    msg << "theta(dE) crosses theta = " << theta << " " << crossings << " times on [" << lo
        << ", 0]; the energy gain is not unique";
    throw DomainError(msg.str());
  }

  numerics::RootOptions ro;
  ro.abs_tol = 1e-16 * std::abs(lo);
  ro.rel_tol = 1e-15;
  return numerics::find_root([&](double d) { return theta_of_deltaE(pot, E, d) - theta; }, lo,
                             0.0, ro)
      .root;
}

double action_smooth(const PotentialModel& pot, double E, double theta) {
  const double dE = deltaE_of_theta(pot, E, theta);
  const Path p = barrier_path(pot, E, dE);
  const double integral =
      barrier_integral(pot, p.x0, p.x1, p.inner_gap, [](double f) { return std::sqrt(f); });
  return 2.0 * std::sqrt(2.0 * pot.mass()) * integral + 2.0 * theta * dE;
}

double resonance_energy_smooth(const PotentialModel& pot, double theta) {
  if (!(theta > 0.0)) throw DomainError("theta must be positive");
  const EnergyWindow w = energy_window(pot, theta);
  double u_min = 0.0;
  static_energy(pot, theta, w, u_min);

  auto A = [&](double u) { return action_smooth(pot, w.at(u), theta); };
  constexpr int n = 24;
  double u_prev = u_min;
  for (int j = 1; j < n; ++j) {
    const double u = u_min + (1.0 - u_min) * j / n;
    double a;
    try {
      a = A(u);
    } catch (const Error&) {
      continue;
    }
    if (a <= 0.0) {
      if (a == 0.0) return w.at(u);
      numerics::RootOptions ro;
      ro.abs_tol = 1e-17;
      ro.rel_tol = 1e-16;
      return w.at(numerics::find_root(A, u_prev, u, ro).root);
    }
    u_prev = u;
  }
  std::ostringstream msg;
  msg << "action does not change sign for energies in [" << w.at(u_min) << ", " << w.top
      << ") at theta = " << theta;
  throw RootNotFound(msg.str());
}

double extremal_field(const PotentialModel& pot, double E, double theta, double omega) {
  const double dE = deltaE_of_theta(pot, E, theta);
  return std::sqrt(-2.0 * pot.mass() * dE) / (pi * theta) *
         std::exp(-omega * omega * theta * theta);
}

double threshold_field(const PotentialModel& pot, double theta, double omega) {
  return extremal_field(pot, resonance_energy_smooth(pot, theta), theta, omega);
}

double extremal_energy(const PotentialModel& pot, double theta, double omega, double eps) {
  if (!(eps >= 0.0)) throw DomainError("field amplitude must be non-negative");
  const double E_R = resonance_energy_smooth(pot, theta);
  const double kick = pi * theta * eps * std::exp(omega * omega * theta * theta);
  auto g = [&](double E) {
    return std::sqrt(-2.0 * pot.mass() * deltaE_of_theta(pot, E, theta)) - kick;
  };
  if (g(E_R) <= 0.0) return E_R;
  const EnergyWindow w = energy_window(pot, theta);
  double u_min = 0.0;
  const double E_min = static_energy(pot, theta, w, u_min);
  if (eps == 0.0) return E_min;
  numerics::RootOptions ro;
  ro.abs_tol = 1e-15 * (std::abs(E_R) + std::abs(E_min));
  ro.rel_tol = 1e-15;
  return numerics::find_root(g, E_min, E_R, ro).root;
}

double deltaE_from_kick(double kick, double velocity, double m) {
  return kick * velocity + kick * kick / (2.0 * m);
}

EuclideanTrajectory integrate_euclidean(const PotentialModel& pot, const Pulse& pulse, double E,
                                        double theta, const ContourOptions& opt) {
  if (pulse.shape != PulseShape::lorentz_gaussian)
    throw DomainError("the contour oracle needs the lorentz-gaussian pulse");
  pulse.validate();
  if (std::abs(pulse.theta - theta) > 1e-12 * theta)
    throw DomainError("pulse theta must equal the contour theta");
  const double m = pot.mass();
  const cplx I(0.0, 1.0);

  EuclideanTrajectory out;
  out.deltaE = opt.deltaE ? *opt.deltaE : deltaE_of_theta(pot, E, theta);
  const double level = E + out.deltaE;
  const double x1 = outer_turning_point(pot, level);
  const double w2 = pulse.omega * pulse.omega;
  const double r =
      opt.loop_radius > 0.0 ? opt.loop_radius : std::min(0.02 / (w2 * theta), 0.5 * theta);
  if (!(r < theta)) throw DomainError("loop radius must be smaller than theta");

  // Segment 1: state (x, m dx/dtau, action).
  using DP3 = numerics::DormandPrince<3>;
  DP3::Options o3;
  o3.rel_tol = opt.rel_tol;
  o3.abs_tol = opt.abs_tol;
  o3.initial_step = 1e-3 * theta;
  const DP3 dp3(o3);
  auto rhs1 = [&](double, const DP3::State& y) -> DP3::State {
    return {y[1] / m, pot.dV(y[0]), 2.0 * (y[1] * y[1] / (2.0 * m) + pot.V(y[0]) - E)};
  };
  auto obs1 = [&](double tau, const DP3::State& y) {
    const cplx energy = pot.V(y[0]) - y[1] * y[1] / (2.0 * m);
    out.energy_drift1 = std::max(out.energy_drift1, std::abs(energy - level));
    out.samples.push_back({1, tau, cplx(0.0, tau), y[0], -I * y[1] / m, energy});
  };
  const DP3::State start1{cplx(x1), cplx(0.0), cplx(0.0)};
  const DP3::State at_loop = dp3.integrate(rhs1, 0.0, theta - r, start1, obs1);
  const DP3::State at_theta = dp3.integrate(rhs1, theta - r, theta, at_loop, [&](double tau, const DP3::State& y) {
    if (tau > theta - r) obs1(tau, y);
  });
  out.x_theta = at_theta[0].real();
  out.velocity_theta = at_theta[1].real() / m;
  out.A_measured = at_theta[2].real();

  // Segment 2: state (x, m dx/dt, work, impulse, action) around the pole.
  using DP5 = numerics::DormandPrince<5>;
  DP5::Options o5;
  o5.rel_tol = opt.rel_tol;
  o5.abs_tol = opt.abs_tol;
  o5.initial_step = 1e-3;
  const DP5 dp5(o5);
  const cplx centre(0.0, theta);
  auto rhs2 = [&](double phi, const DP5::State& y) -> DP5::State {
    const cplx e = std::exp(I * phi);
    const cplx t = centre + r * e;
    const cplx dt = I * r * e;
    const cplx F = evaluate(pulse, t);
    const cplx v = y[1] / m;
    return {v * dt, (-pot.dV(y[0]) + F) * dt, F * v * dt, F * dt,
            (0.5 * m * v * v - pot.V(y[0]) + y[0] * F + E) * dt};
  };
  auto obs2 = [&](double phi, const DP5::State& y) {
    const cplx v = y[1] / m;
    out.samples.push_back(
        {2, phi, centre + r * std::exp(I * phi), y[0], v, 0.5 * m * v * v + pot.V(y[0])});
  };
  const DP5::State start2{at_loop[0], -I * at_loop[1], 0.0, 0.0, 0.0};
  const DP5::State end2 = dp5.integrate(rhs2, -0.5 * pi, 1.5 * pi, start2, obs2);
  out.impulse = end2[3];
  out.deltaE_measured = -end2[2];
  out.loop_action = -2.0 * end2[4].imag();
  out.coordinate_jump = end2[0] - start2[0];
  out.kick_expected = contour_kick(pulse);
  out.deltaE_formula = deltaE_from_kick(out.kick_expected, out.velocity_theta, m);

  // Segment 3: t = i(theta - r) - s, free motion.
  using DP2 = numerics::DormandPrince<2>;
  DP2::Options o2;
  o2.rel_tol = opt.rel_tol;
  o2.abs_tol = opt.abs_tol;
  o2.initial_step = 1e-3 * theta;
  const DP2 dp2(o2);
  const cplx t3(0.0, theta - r);
  auto rhs3 = [&](double, const DP2::State& y) -> DP2::State {
    return {-y[1] / m, pot.dV(y[0])};
  };
  bool first = true;
  auto obs3 = [&](double s, const DP2::State& y) {
    const cplx v = y[1] / m;
    const cplx energy = 0.5 * m * v * v + pot.V(y[0]);
    if (first) {
      out.energy3 = energy;
      first = false;
    }
    out.energy_drift3 = std::max(out.energy_drift3, std::abs(energy - out.energy3));
    out.samples.push_back({3, s, t3 - s, y[0], v, energy});
  };
  const double len3 = opt.segment3_length < 0.0 ? theta : opt.segment3_length;
  dp2.integrate(rhs3, 0.0, len3, DP2::State{end2[0], end2[1]}, obs3);
  return out;
}

TriangularLimitReport triangular_limit_check(const BarrierSpec& spec, double theta,
                                             double omega) {
  spec.validate();
  const PotentialModel pot = PotentialModel::triangular(spec.V, spec.E0, spec.m);
  const ResonanceParams rp = resonance_params(spec, theta, 1.0);
  const double A0 = static_action(spec);
  const double gap = spec.V - spec.E;
  const double w2t2 = omega * omega * theta * theta;

  TriangularLimitReport r;
  r.A_smooth = action_smooth(pot, spec.E, theta);
  r.A_triangular = 2.0 * (rp.E_R - spec.E) * theta;
  r.E_R_smooth = resonance_energy_smooth(pot, theta);
  r.E_R_triangular = rp.E_R;
  r.eps_T_smooth = threshold_field(pot, theta, omega);
  r.eps_T_triangular = spec.E0 / pi * std::sqrt(2.0 / 3.0) * std::exp(-w2t2);
  const double eps = 0.5 * r.eps_T_triangular;
  r.E_ext_smooth = extremal_energy(pot, theta, omega, eps);
  const double k = pi * eps / spec.E0 * std::exp(w2t2);
  r.E_ext_triangular =
      rp.E_R - theta * theta * spec.E0 * spec.E0 / (2.0 * spec.m) * (2.0 / 3.0 - k * k);

  r.max_relative_deviation = std::max(
      {std::abs(r.A_smooth - r.A_triangular) / A0, std::abs(r.E_R_smooth - r.E_R_triangular) / gap,
       std::abs(r.eps_T_smooth / r.eps_T_triangular - 1.0),
       std::abs(r.E_ext_smooth - r.E_ext_triangular) / gap});
  return r;
}

}  // namespace eres
