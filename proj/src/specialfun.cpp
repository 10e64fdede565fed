#include "helmpert/specialfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace helmpert::specialfun {

namespace {

constexpr double kRescaleAbove = 1e250;
constexpr double kRescaleBy = 1e-250;

void check_order(int n) {
  if (n < 0 || n > kMaxOrder) {
    throw std::domain_error("cylinder function order " + std::to_string(n) +
                            " outside [0, " + std::to_string(kMaxOrder) + "]");
  }
}

void check_argument(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw std::domain_error("cylinder function argument must be finite and >= 0");
  }
}

// Even starting order for the downward recurrence. Generous enough that the
// orders we keep (<= top) are converged to machine precision.
int miller_start(int top, double x) {
  const double t = std::max<double>(top, x);
  int m = static_cast<int>(t + 20.0 + std::sqrt(40.0 * t) + 6.0 * std::cbrt(x));
  return m + (m & 1);
}

// Hankel asymptotic expansion for order nu in {0, 1}, truncated at the
// smallest term.
cplx hankel_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  cplx sum = 1.0;
  double term = 1.0;
  cplx ipow = 1.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(next) > last) break;
    term = next;
    last = std::abs(next);
    ipow *= cplx(0.0, 1.0);
    sum += ipow * term;
    if (last < 1e-17) break;
  }
  const double omega = x - nu * std::numbers::pi / 2.0 - std::numbers::pi / 4.0;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * std::polar(1.0, omega) * sum;
}

// Downward recurrence accumulating everything the series branch needs:
// the normalisation sum, J_0, J_1, and the Neumann sums for Y_0 and Y_1.
Cylinder01 series01(double x) {
  const int start = miller_start(1, x);
  double jp1 = 0.0;   // J_{n+1}, unnormalised
  double j = 1e-30;   // J_n
  double norm = 0.0;  // J_0 + 2 sum J_2k
  double y0sum = 0.0; // sum_{k>=1} (-1)^k J_2k / k
  double y1sum = 0.0; // sum_{k>=1} (-1)^k (J_{2k-1} - J_{2k+1}) / k
  double j0 = 0.0, j1 = 0.0;
  for (int n = start; n >= 0; --n) {
    if (n == 0) {
      norm += j;
      j0 = j;
    } else if (n % 2 == 0) {
      const int k = n / 2;
      norm += 2.0 * j;
      y0sum += ((k % 2 == 0) ? 1.0 : -1.0) * j / k;
    } else {
      // odd n contributes to the k = (n+1)/2 and k = (n-1)/2 terms
      const int kp = (n + 1) / 2;
      y1sum += ((kp % 2 == 0) ? 1.0 : -1.0) * j / kp;
      const int km = (n - 1) / 2;
      if (km >= 1) y1sum -= ((km % 2 == 0) ? 1.0 : -1.0) * j / km;
      if (n == 1) j1 = j;
    }
    if (n == 0) break;
    const double jm1 = (2.0 * n / x) * j - jp1;
    jp1 = j;
    j = jm1;
    if (std::abs(j) > kRescaleAbove) {
      j *= kRescaleBy;
      jp1 *= kRescaleBy;
      norm *= kRescaleBy;
      y0sum *= kRescaleBy;
      y1sum *= kRescaleBy;
      j1 *= kRescaleBy;
    }
  }
  j0 /= norm;
  j1 /= norm;
  y0sum /= norm;
  y1sum /= norm;
  const double lg = std::log(x / 2.0) + kEulerGamma;
  const double two_over_pi = 2.0 / std::numbers::pi;
  Cylinder01 out{};
  out.j0 = j0;
  out.j1 = j1;
  out.y0 = two_over_pi * (lg * j0 - 2.0 * y0sum);
  out.y1 = two_over_pi * (-j0 / x + lg * j1 + y1sum);
  return out;
}

Cylinder01 asymptotic01(double x) {
  const cplx h0 = hankel_asymptotic(0, x);
  const cplx h1 = hankel_asymptotic(1, x);
  return {h0.real(), h1.real(), h0.imag(), h1.imag()};
}

// Y_0..Y_order_max from Y_0, Y_1 by upward recurrence.
std::vector<double> y_sequence(int order_max, double x, const Cylinder01 &c) {
  std::vector<double> y(order_max + 1);
  y[0] = c.y0;
  if (order_max >= 1) y[1] = c.y1;
  for (int n = 1; n < order_max; ++n) y[n + 1] = (2.0 * n / x) * y[n] - y[n - 1];
  return y;
}

} // namespace

std::vector<double> bessel_j_sequence(int order_max, double x) {
  check_argument(x);
  if (order_max < 0) throw std::domain_error("negative order");
  std::vector<double> out(order_max + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const int start = miller_start(order_max, x);
  double jp1 = 0.0, j = 1e-30, norm = 0.0;
  for (int n = start; n >= 0; --n) {
    if (n <= order_max) out[n] = j;
    if (n == 0) {
      norm += j;
      break;
    }
    if (n % 2 == 0) norm += 2.0 * j;
    const double jm1 = (2.0 * n / x) * j - jp1;
    jp1 = j;
    j = jm1;
    if (std::abs(j) > kRescaleAbove) {
      j *= kRescaleBy;
      jp1 *= kRescaleBy;
      norm *= kRescaleBy;
      for (int m = n; m <= order_max; ++m) out[m] *= kRescaleBy;
    }
  }
  // Beyond the seam, pin the sequence to the asymptotic J_0/J_1 so that it
  // is consistent with the Y seeds used there.
  double scale = 1.0 / norm;
  if (x > kSeamRadius) {
    const Cylinder01 a = asymptotic01(x);
    if (order_max >= 1 && std::abs(a.j1) > std::abs(a.j0)) {
      scale = a.j1 / out[1];
    } else {
      scale = a.j0 / out[0];
    }
  }
  for (double &v : out) v *= scale;
  return out;
}

Cylinder01 cylinder01(double x, Branch branch) {
  check_argument(x);
  if (x == 0.0) throw std::domain_error("Y_n is singular at x = 0");
  return branch == Branch::series ? series01(x) : asymptotic01(x);
}

Cylinder01 cylinder01(double x) {
  return cylinder01(x, x <= kSeamRadius ? Branch::series : Branch::asymptotic);
}

double bessel_j(int n, double x) {
  check_order(n);
  return bessel_j_sequence(n, x)[n];
}

double bessel_j_derivative(int n, double x) {
  check_order(n);
  const auto j = bessel_j_sequence(n + 1, x);
  if (n == 0) return -j[1];
  return 0.5 * (j[n - 1] - j[n + 1]);
}

double bessel_y(int n, double x) {
  check_order(n);
  check_argument(x);
  if (x == 0.0) throw std::domain_error("Y_n is singular at x = 0");
  return y_sequence(std::max(n, 1), x, cylinder01(x))[n];
}

cplx hankel1(int n, double x) {
  check_order(n);
  if (!(x > 0.0)) throw std::domain_error("H_n^(1) requires x > 0");
  return {bessel_j(n, x), bessel_y(n, x)};
}

cplx hankel1_derivative(int n, double x) {
  check_order(n);
  if (!(x > 0.0)) throw std::domain_error("H_n^(1) requires x > 0");
  const auto t = CylinderFunctionTable::make(n, x);
  return t.h1_derivative(n);
}

CylinderFunctionTable CylinderFunctionTable::make(int order_max, double x) {
  check_order(order_max);
  if (!(x > 0.0)) throw std::domain_error("cylinder table requires x > 0");
  CylinderFunctionTable t;
  t.order_max = order_max;
  t.argument = x;
  // one extra order so derivatives at order_max are available
  const auto j = bessel_j_sequence(order_max + 1, x);
  const auto y = y_sequence(order_max + 1, x, cylinder01(x));
  t.values_j.assign(j.begin(), j.begin() + order_max + 1);
  t.values_h1.resize(order_max + 1);
  for (int n = 0; n <= order_max; ++n) t.values_h1[n] = {j[n], y[n]};
  t.next_j_ = j[order_max + 1];
  t.next_h1_ = {j[order_max + 1], y[order_max + 1]};
  return t;
}

double CylinderFunctionTable::j_derivative(int n) const {
  const double above = n == order_max ? next_j_ : values_j.at(n + 1);
  if (n == 0) return -above;
  return 0.5 * (values_j.at(n - 1) - above);
}

cplx CylinderFunctionTable::h1_derivative(int n) const {
  const cplx above = n == order_max ? next_h1_ : values_h1.at(n + 1);
  if (n == 0) return -above;
  return 0.5 * (values_h1.at(n - 1) - above);
}

LogSplit hankel1_log_split(double x, double split_radius, int terms) {
  if (!(x > 0.0)) throw std::domain_error("log split requires x > 0");
  if (x > split_radius) {
    throw std::out_of_range("log split argument " + std::to_string(x) +
                            " beyond split radius " + std::to_string(split_radius));
  }
  const int max_terms = terms > 0 ? terms : 200;
  const double q = 0.25 * x * x;
  double term = 1.0;     // q^m / (m!)^2
  double j0 = 1.0;       // sum (-1)^m q^m / (m!)^2
  double harmonic = 0.0; // H_m
  double smooth = 0.0;   // sum_{m>=1} (-1)^{m+1} H_m q^m / (m!)^2
  for (int m = 1; m < max_terms; ++m) {
    term *= q / (static_cast<double>(m) * m);
    harmonic += 1.0 / m;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    j0 += sign * term;
    smooth -= sign * harmonic * term;
    if (terms == 0 && term * (harmonic + 1.0) < 1e-18 * std::abs(j0)) break;
  }
  const double inv2pi = 0.5 / std::numbers::pi;
  LogSplit out;
  out.log_coefficient = inv2pi * j0;
  out.smooth_part = cplx(inv2pi * ((kEulerGamma - std::numbers::ln2) * j0 + smooth),
                         -0.25 * j0);
  return out;
}

} // namespace helmpert::specialfun
