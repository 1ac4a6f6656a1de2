#include <cmath>
#include <numbers>

#include "doctest.h"
#include "eres/numerics.hpp"
#include "support.hpp"

using namespace eres;
using namespace eres::numerics;
using eres::testing::Gen;
using eres::testing::rel_diff;

TEST_CASE("gauss-kronrod is exact on low-degree polynomials") {
  const auto r = integrate([](double x) { return 3 * x * x - 2 * x + 1; }, -1.0, 2.0);
  CHECK(r.value == doctest::Approx(9.0).epsilon(1e-15));
}

TEST_CASE("adaptive quadrature handles a peaked integrand") {
  const double w = 1e-3;
  const auto r = integrate([&](double x) { return std::exp(-x * x / (w * w)); }, -1.0, 1.0, {}, {0.0});
  CHECK(rel_diff(r.value, w * std::sqrt(std::numbers::pi)) < 1e-12);
}

TEST_CASE("complex integrand") {
  const auto r = integrate([](double t) { return std::exp(cplx(0, t)); }, 0.0, std::numbers::pi);
  CHECK(std::abs(r.value - cplx(0, 2)) < 1e-14);
}

TEST_CASE("quadrature reports failure when the budget runs out") {
  QuadOptions opt;
  opt.max_intervals = 3;
  opt.rel_tol = 1e-15;
  CHECK_THROWS_AS(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opt), QuadratureError);
}

TEST_CASE("find_root") {
  const auto r = find_root([](double x) { return std::cos(x) - x; }, 0.0, 1.0);
  CHECK(std::abs(r.root - 0.7390851332151607) < 1e-13);
  CHECK(r.iterations < 20);
  CHECK_THROWS_AS(find_root([](double x) { return x * x + 1; }, -1.0, 1.0), RootNotFound);
}

TEST_CASE("find_root converges on random cubics") {
  Gen g(11);
  for (int i = 0; i < 200; ++i) {
    const double r0 = g.uniform(-5, 5), s = g.log_uniform(1e-3, 1e3);
    auto f = [&](double x) { return s * (x - r0) * ((x - r0) * (x - r0) + 1.0); };
    const auto r = find_root(f, -10.0, 10.0);
    CHECK(std::abs(r.root - r0) < 1e-12);
  }
}

TEST_CASE("scan_brackets finds each sign change") {
  const auto b = scan_brackets([](double x) { return std::sin(x); }, 0.5, 10.0, 100);
  REQUIRE(b.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(b[k].first <= (k + 1) * std::numbers::pi);
    CHECK(b[k].second >= (k + 1) * std::numbers::pi);
  }
}

TEST_CASE("golden section") {
  const auto m = golden_section_minimize([](double x) { return (x - 1.25) * (x - 1.25) + 3; }, -4, 4, 1e-10);
  CHECK(std::abs(m.x - 1.25) < 1e-7);
  CHECK(m.value == doctest::Approx(3.0));
}

TEST_CASE("monotone cubic") {
  MonotoneCubic lin({0, 1, 2, 4}, {1, 3, 5, 9});
  CHECK(lin(3.0) == doctest::Approx(7.0));
  CHECK(lin.derivative(0.5) == doctest::Approx(2.0));

  Gen g(5);
  std::vector<double> x{0}, y{0};
  for (int i = 0; i < 40; ++i) {
    x.push_back(x.back() + g.uniform(0.05, 1.0));
    y.push_back(y.back() + g.uniform(0.0, 2.0));
  }
  MonotoneCubic f(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(f(x[i]) == doctest::Approx(y[i]));
  for (int i = 0; i < 500; ++i) {
    const double a = g.uniform(x.front(), x.back()), b = g.uniform(x.front(), x.back());
    CHECK((a < b ? f(a) <= f(b) : f(a) >= f(b)));
    CHECK(std::abs(f.difference(a, b - a) - (f(b) - f(a))) < 1e-12 * (1 + std::abs(f(b))));
  }
  const double tiny = 1e-9;
  CHECK(rel_diff(f.difference(x[3], tiny), f.derivative(x[3] + tiny / 2) * tiny) < 1e-6);
}

TEST_CASE("dormand-prince follows a complex rotation") {
  using DP = DormandPrince<1>;
  DP::Options o;
  o.rel_tol = 1e-12;
  o.abs_tol = 1e-14;
  const auto y = DP(o).integrate([](double, const DP::State& s) { return DP::State{cplx(0, 1) * s[0]}; },
                                 0.0, 10.0, {cplx(1, 0)});
  CHECK(std::abs(y[0] - std::exp(cplx(0, 10))) < 1e-10);
}
