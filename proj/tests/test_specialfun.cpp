#include "helmpert/specialfun.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace helmpert::specialfun;
using std::numbers::pi;

namespace {

// J_n from the integral (1/pi) int_0^pi cos(n t - x sin t) dt, composite Simpson
double bessel_j_integral(int n, double x) {
  const int m = 4000;
  const double h = pi / m;
  double s = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double t = i * h;
    const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * std::cos(n * t - x * std::sin(t));
  }
  return s * h / 3.0 / pi;
}

} // namespace

TEST_CASE("bessel_j limits and known values") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(1, 0.0) == 0.0);
  CHECK(bessel_j(0, 1.0) == doctest::Approx(0.76519768655796655).epsilon(1e-15));
  CHECK_THROWS(bessel_j(0, -1.0));
  for (int n : {0, 1, 3, 7}) {
    for (double x : {0.3, 1.0, 4.5, 11.0, 17.0}) {
      CHECK(std::abs(bessel_j(n, x) - bessel_j_integral(n, x)) < 1e-12);
    }
  }
}

TEST_CASE("hankel1 values") {
  const cplx h0 = hankel1(0, 1.0);
  CHECK(std::abs(h0 - cplx(0.7651976866, 0.0882569642)) < 1e-10);
  const cplx h1 = hankel1(1, 1.0);
  CHECK(std::abs(h1 - cplx(0.4400505857, -0.7812128213)) < 1e-10);
  CHECK_THROWS_AS(hankel1(0, 0.0), std::domain_error);
  CHECK_THROWS_AS(hankel1(0, -2.0), std::domain_error);
  for (double x : {0.5, 1.0, 2.0}) {
    CHECK(std::abs(hankel1(0, x) + hankel1(2, x) - (2.0 / x) * hankel1(1, x)) < 1e-12 * std::abs(hankel1(2, x)));
  }
}

TEST_CASE("Wronskian and recurrence on the argument grid") {
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const auto t = CylinderFunctionTable::make(21, x);
    for (int n = 0; n <= 20; ++n) {
      const double w = t.values_j[n] * t.h1_derivative(n).imag() - t.j_derivative(n) * t.y(n);
      CHECK(std::abs(w * pi * x / 2.0 - 1.0) < 1e-10);
      if (n >= 1) {
        const cplx lhs = t.values_h1[n - 1] + t.values_h1[n + 1];
        const cplx rhs = (2.0 * n / x) * t.values_h1[n];
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
        const double jl = t.values_j[n - 1] + t.values_j[n + 1];
        const double jr = (2.0 * n / x) * t.values_j[n];
        CHECK(std::abs(jl - jr) <= 1e-10 * std::max(std::abs(jr), 1e-300) + 1e-300);
      }
    }
  }
}

TEST_CASE("series and asymptotic branches agree at the seam") {
  for (double x : {kSeamRadius - 0.5, kSeamRadius, kSeamRadius + 0.5}) {
    const auto a = cylinder01(x, Branch::series);
    const auto b = cylinder01(x, Branch::asymptotic);
    CHECK(std::abs(a.y0 - b.y0) < 1e-10);
    CHECK(std::abs(a.y1 - b.y1) < 1e-10);
    CHECK(std::abs(a.j0 - b.j0) < 1e-10);
    CHECK(std::abs(a.j1 - b.j1) < 1e-10);
  }
}

TEST_CASE("derivative identity H0' = -H1") {
  const double x = 1.7, step = 1e-6;
  const cplx fd = (hankel1(0, x + step) - hankel1(0, x - step)) / (2.0 * step);
  CHECK(std::abs(fd + hankel1(1, x)) < 1e-7);
  CHECK(std::abs(hankel1_derivative(0, x) + hankel1(1, x)) < 1e-12);
}

TEST_CASE("|H0| decreases before the first zero of J0") {
  double prev = std::abs(hankel1(0, 0.05));
  for (double x = 0.1; x < 2.4; x += 0.05) {
    const double cur = std::abs(hankel1(0, x));
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("log split of the fundamental solution") {
  const auto s = hankel1_log_split(1e-8);
  CHECK(s.log_coefficient == doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-14));
  const cplx target = cplx(0.0, -0.25) * hankel1(0, 0.1);
  const auto a = hankel1_log_split(0.1);
  CHECK(std::abs(a.smooth_part + a.log_coefficient * std::log(0.1) - target) < 1e-12);
  const cplx t5 = cplx(0.0, -0.25) * hankel1(0, 0.5);
  const auto b = hankel1_log_split(0.5, kDefaultLogSplitRadius, 20);
  CHECK(std::abs(b.smooth_part + b.log_coefficient * std::log(0.5) - t5) < 1e-14);
  CHECK_THROWS_AS(hankel1_log_split(kDefaultLogSplitRadius + 1.0), std::out_of_range);
}

TEST_CASE("order range") {
  CHECK_NOTHROW(hankel1(kMaxOrder, 3.0));
  CHECK_THROWS(hankel1(kMaxOrder + 1, 3.0));
  CHECK_THROWS(hankel1(-1, 3.0));
}
