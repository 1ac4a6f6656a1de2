#pragma once

// Numerical kernels shared by the physics modules: adaptive Gauss-Kronrod
// quadrature, a bracketing root solver, golden-section minimization, an
// embedded Runge-Kutta integrator over complex state, and monotone cubic
// interpolation.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "eres/errors.hpp"

namespace eres::numerics {

using cplx = std::complex<double>;

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_intervals = 4000;
};

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  int intervals = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for Kronrod nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const cplx& v) { return std::abs(v); }

template <class T>
struct Segment {
  double a, b;
  T value;
  double error;
};

template <class T, class F>
Segment<T> gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T fc = f(c);
  T kronrod = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kKronrodNodes[i];
    T sum = f(c - dx) + f(c + dx);
    kronrod += sum * kKronrodWeights[i];
    if (i % 2 == 1) gauss += sum * kGaussWeights[i / 2];
  }
  kronrod *= h;
  gauss *= h;
  return {a, b, kronrod, magnitude(kronrod - gauss)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature over [a, b], with
/// optional interior break points where the integrand is not smooth.
/// Throws QuadratureError when the requested tolerance is not reached.
template <class F>
auto integrate(const F& f, double a, double b, const QuadOptions& opt = {},
               std::span<const double> breaks = {}) {
  using T = std::decay_t<decltype(f(a))>;
  using detail::Segment;

  std::vector<double> edges{a};
  for (double p : breaks)
    if ((p - a) * (p - b) < 0.0) edges.push_back(p);
  edges.push_back(b);
  if (a > b)
    std::sort(edges.begin(), edges.end(), std::greater<>());
  else
    std::sort(edges.begin(), edges.end());

  std::vector<Segment<T>> segs;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    if (edges[i] != edges[i + 1]) segs.push_back(detail::gk15<T>(f, edges[i], edges[i + 1]));

  // max-heap on the error estimate
  auto less = [](const Segment<T>& l, const Segment<T>& r) { return l.error < r.error; };
  std::make_heap(segs.begin(), segs.end(), less);
  auto totals = [&segs] {
    T v{};
    double e = 0.0;
    for (const auto& s : segs) {
      v += s.value;
      e += s.error;
    }
    return std::pair{v, e};
  };

  T value{};
  double error = 0.0;
  std::tie(value, error) = totals();
  int since_sum = 0;
  while (error > std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(value))) {
    if (static_cast<int>(segs.size()) >= opt.max_intervals) {
      std::tie(value, error) = totals();
      if (error <= std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(value))) break;
      throw QuadratureError("adaptive quadrature did not converge: estimate " +
                                std::to_string(detail::magnitude(value)) + ", error " +
                                std::to_string(error) + ", intervals " +
                                std::to_string(segs.size()),
                            detail::magnitude(value), error, static_cast<int>(segs.size()));
    }
    std::pop_heap(segs.begin(), segs.end(), less);
    Segment<T> worst = segs.back();
    segs.pop_back();
    const double lo = worst.a, hi = worst.b, mid = 0.5 * (lo + hi);
    value -= worst.value;
    error -= worst.error;
    if (mid == lo || mid == hi) {
      // interval cannot be split further; accept what we have
      worst.error = 0.0;
      value += worst.value;
      segs.push_back(worst);
      std::push_heap(segs.begin(), segs.end(), less);
    } else {
      for (const auto& piece : {detail::gk15<T>(f, lo, mid), detail::gk15<T>(f, mid, hi)}) {
        value += piece.value;
        error += piece.error;
        segs.push_back(piece);
        std::push_heap(segs.begin(), segs.end(), less);
      }
    }
    if (++since_sum == 64) {
      std::tie(value, error) = totals();
      since_sum = 0;
    }
  }
  std::tie(value, error) = totals();
  return QuadResult<T>{value, error, static_cast<int>(segs.size())};
}

template <class F>
auto integrate(const F& f, double a, double b, const QuadOptions& opt,
               std::initializer_list<double> breaks) {
  return integrate(f, a, b, opt, std::span<const double>(breaks.begin(), breaks.size()));
}

struct RootOptions {
  double abs_tol = 1e-14;
  double rel_tol = 1e-14;
  int max_iter = 300;
};

struct RootResult {
  double root;
  int iterations;
};

/// Root of f on the bracket [lo, hi]: bisection safeguarding secant steps.
RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                     const RootOptions& opt = {});

/// Sign changes of f sampled on a uniform grid of n+1 points over [lo, hi];
/// each returned pair brackets one root.
std::vector<std::pair<double, double>> scan_brackets(const std::function<double(double)>& f,
                                                     double lo, double hi, int n);

struct MinResult {
  double x;
  double value;
  int iterations;
};

/// Golden-section search for a minimum of a unimodal f on [a, b].
MinResult golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                  double x_tol);

/// Monotone piecewise-cubic Hermite interpolant (Fritsch-Butland slopes).
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double derivative(double x) const;
  /// f(x + dx) - f(x) without cancellation for small dx.
  double difference(double x, double dx) const;
  // Analytic continuation of the local cubic piece selected by Re(z).
  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;

  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  std::span<const double> knots() const { return x_; }
  std::span<const double> values() const { return y_; }

 private:
  std::size_t segment(double x) const;

  std::vector<double> x_, y_, d_;
};

/// Dormand-Prince 5(4) embedded pair with adaptive step control, for a
/// complex state of fixed dimension N evolving in a real parameter s.
template <std::size_t N>
class DormandPrince {
 public:
  using State = std::array<cplx, N>;
  using Rhs = std::function<State(double, const State&)>;
  using Observer = std::function<void(double, const State&)>;

  struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double initial_step = 0.0;
    double min_step = 1e-14;
    int max_steps = 200000;
  };

  explicit DormandPrince(Options opt) : opt_(opt) {}

  /// Integrates from s0 to s1, invoking the observer after every accepted
  /// step (and once at s0). Returns the final state.
  State integrate(const Rhs& rhs, double s0, double s1, State y,
                  const Observer& observe = nullptr) const {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double span = s1 - s0;
    if (span == 0.0) return y;
    const double dir = span > 0 ? 1.0 : -1.0;
    double h = opt_.initial_step > 0 ? opt_.initial_step * dir : span / 100.0;
    double s = s0;
    if (observe) observe(s, y);

    auto axpy = [](const State& base, std::initializer_list<std::pair<double, const State*>> terms,
                   double step) {
      State out = base;
      for (const auto& [c, k] : terms)
        for (std::size_t i = 0; i < N; ++i) out[i] += step * c * (*k)[i];
      return out;
    };

    State k1 = rhs(s, y);
    for (int steps = 0; steps < opt_.max_steps; ++steps) {
      if ((s + h - s1) * dir > 0) h = s1 - s;
      const State k2 = rhs(s + c2 * h, axpy(y, {{a21, &k1}}, h));
      const State k3 = rhs(s + c3 * h, axpy(y, {{a31, &k1}, {a32, &k2}}, h));
      const State k4 = rhs(s + c4 * h, axpy(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h));
      const State k5 =
          rhs(s + c5 * h, axpy(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h));
      const State k6 = rhs(
          s + h, axpy(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h));
      const State y_new =
          axpy(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
      const State k7 = rhs(s + h, y_new);

      double err = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        const cplx e =
            h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double scale =
            opt_.abs_tol + opt_.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        err = std::max(err, std::abs(e) / scale);
      }

      if (!std::isfinite(err)) {
        throw IntegrationError("non-finite state during integration at s = " + std::to_string(s),
                               s);
      }
      if (err <= 1.0) {
        s += h;
        y = y_new;
        k1 = k7;
        if (observe) observe(s, y);
        if ((s - s1) * dir >= 0) return y;
      }
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h *= factor;
      if (std::abs(h) < opt_.min_step * std::max(1.0, std::abs(span))) {
        throw IntegrationError("step size underflow at s = " + std::to_string(s), s);
      }
    }
    throw IntegrationError("step budget exhausted at s = " + std::to_string(s), s);
  }

 private:
  Options opt_;
};

}  // namespace eres::numerics
