#include "eres/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace eres::numerics {

RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                     const RootOptions& opt) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return {lo, 0};
  if (fhi == 0.0) return {hi, 0};
  if (!(flo * fhi < 0.0)) {
    std::ostringstream msg;
    msg << "root not bracketed: f(" << lo << ") = " << flo << ", f(" << hi << ") = " << fhi;
    throw RootNotFound(msg.str());
  }

  // Brent's method: inverse quadratic / secant steps guarded by bisection.
  double a = lo, fa = flo, b = hi, fb = fhi;
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 1; it <= opt.max_iter; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
                       0.5 * (opt.abs_tol + opt.rel_tol * std::abs(b));
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return {b, it};
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
  }
  return {b, opt.max_iter};
}

std::vector<std::pair<double, double>> scan_brackets(const std::function<double(double)>& f,
                                                     double lo, double hi, int n) {
  std::vector<std::pair<double, double>> out;
  double x_prev = lo;
  double f_prev = f(lo);
  for (int i = 1; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    const double fx = f(x);
    if (std::isfinite(f_prev) && std::isfinite(fx) && f_prev * fx <= 0.0 && f_prev != 0.0)
      out.emplace_back(x_prev, x);
    x_prev = x;
    f_prev = fx;
  }
  return out;
}

MinResult golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                  double x_tol) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  int it = 0;
  while (std::abs(b - a) > x_tol && it < 500) {
    ++it;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x), it};
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw DomainError("monotone cubic needs >= 2 matching samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1])) throw DomainError("interpolation knots must be strictly increasing");

  std::vector<double> delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);

  d_.assign(n, 0.0);
  d_[0] = delta[0];
  d_[n - 1] = delta[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      d_[i] = 0.0;
    } else {
      // weighted harmonic mean (Fritsch-Butland), monotone by construction
      const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
      const double w1 = 2 * h1 + h0, w2 = h1 + 2 * h0;
      d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
}

std::size_t MonotoneCubic::segment(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

namespace {

template <class T>
T hermite(double x0, double x1, double y0, double y1, double d0, double d1, T x) {
  const double h = x1 - x0;
  const T t = (x - x0) / h;
  const T t2 = t * t, t3 = t2 * t;
  return (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + t) * h * d0 +
         (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * h * d1;
}

template <class T>
T hermite_slope(double x0, double x1, double y0, double y1, double d0, double d1, T x) {
  const double h = x1 - x0;
  const T t = (x - x0) / h;
  const T t2 = t * t;
  return ((6.0 * t2 - 6.0 * t) * y0 + (3.0 * t2 - 4.0 * t + 1.0) * h * d0 +
          (-6.0 * t2 + 6.0 * t) * y1 + (3.0 * t2 - 2.0 * t) * h * d1) /
         h;
}

}  // namespace

double MonotoneCubic::operator()(double x) const {
  const std::size_t i = segment(x);
  return hermite(x_[i], x_[i + 1], y_[i], y_[i + 1], d_[i], d_[i + 1], x);
}

double MonotoneCubic::derivative(double x) const {
  const std::size_t i = segment(x);
  return hermite_slope(x_[i], x_[i + 1], y_[i], y_[i + 1], d_[i], d_[i + 1], x);
}

double MonotoneCubic::difference(double x, double dx) const {
  // y(x_i + (t + tau) h) - y(x_i + t h) on piece i, in power form
  auto local = [this](std::size_t i, double t, double tau) {
    const double h = x_[i + 1] - x_[i];
    const double dy = y_[i + 1] - y_[i];
    const double a1 = h * d_[i];
    const double a2 = 3.0 * dy - 2.0 * h * d_[i] - h * d_[i + 1];
    const double a3 = -2.0 * dy + h * d_[i] + h * d_[i + 1];
    return a1 * tau + a2 * tau * (2.0 * t + tau) + a3 * tau * (3.0 * t * t + 3.0 * t * tau + tau * tau);
  };
  auto width = [this](std::size_t i) { return x_[i + 1] - x_[i]; };
  const std::size_t i = segment(x), j = segment(x + dx);
  const double ti = (x - x_[i]) / width(i);
  if (i == j) return local(i, ti, dx / width(i));
  if (i < j) {
    const double head = local(i, ti, (x_[i + 1] - x) / width(i));
    const double tail = (x + dx - x_[j]) / width(j);
    return head + (y_[j] - y_[i + 1]) + local(j, 0.0, tail);
  }
  const double head = local(i, ti, (x_[i] - x) / width(i));
  const double tail = (x + dx - x_[j + 1]) / width(j);
  return head + (y_[j + 1] - y_[i]) + local(j, 1.0, tail);
}

cplx MonotoneCubic::operator()(cplx z) const {
  const std::size_t i = segment(z.real());
  return hermite(x_[i], x_[i + 1], y_[i], y_[i + 1], d_[i], d_[i + 1], z);
}

cplx MonotoneCubic::derivative(cplx z) const {
  const std::size_t i = segment(z.real());
  return hermite_slope(x_[i], x_[i + 1], y_[i], y_[i + 1], d_[i], d_[i + 1], z);
}

}  // namespace eres::numerics
