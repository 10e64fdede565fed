#pragma once

// Bessel and Hankel functions of integer order and real argument.
//
// J_n is computed by Miller's downward recurrence normalised with
// J_0 + 2 sum J_2k = 1. Y_0 and Y_1 come from Neumann series in J_2k for
// arguments up to kSeamRadius and from the Hankel asymptotic expansion
// beyond; higher Y_n follow by upward recurrence.

#include <complex>
#include <vector>

namespace helmpert::specialfun {

using cplx = std::complex<double>;

inline constexpr int kMaxOrder = 60;
inline constexpr double kSeamRadius = 12.0;
inline constexpr double kEulerGamma = 0.57721566490153286061;

double bessel_j(int n, double x);
double bessel_y(int n, double x);
double bessel_j_derivative(int n, double x);

/// H_n^(1)(x) = J_n(x) + i Y_n(x); throws std::domain_error for x <= 0.
cplx hankel1(int n, double x);
cplx hankel1_derivative(int n, double x);

/// J_n(x) and H_n^(1)(x) for n = 0..order_max at one argument.
struct CylinderFunctionTable {
  int order_max = 0;
  double argument = 0.0;
  std::vector<double> values_j;
  std::vector<cplx> values_h1;

  static CylinderFunctionTable make(int order_max, double x);

  double y(int n) const { return values_h1.at(n).imag(); }
  double j_derivative(int n) const;
  cplx h1_derivative(int n) const;

private:
  double next_j_ = 0.0; // order_max + 1, for the top derivative
  cplx next_h1_;
};

/// J_0, J_1, Y_0, Y_1 in one pass; the hot path of kernel assembly.
struct Cylinder01 {
  double j0, j1, y0, y1;
  cplx h0() const { return {j0, y0}; }
  cplx h1() const { return {j1, y1}; }
};
Cylinder01 cylinder01(double x);

/// Which evaluation branch produced Y_0/Y_1; exposed so the seam can be tested.
enum class Branch { series, asymptotic };
Cylinder01 cylinder01(double x, Branch branch);

struct LogSplit {
  cplx smooth_part;
  double log_coefficient;
};

inline constexpr double kDefaultLogSplitRadius = kSeamRadius;

/// Splits -(i/4) H_0^(1)(x) = log_coefficient * ln(x) + smooth_part using the
/// ascending series; log_coefficient = J_0(x) / (2 pi).
/// `terms` bounds the number of series terms (0 means run to convergence).
LogSplit hankel1_log_split(double x, double split_radius = kDefaultLogSplitRadius,
                           int terms = 0);

/// J_0..J_order_max by Miller's algorithm.
std::vector<double> bessel_j_sequence(int order_max, double x);

} // namespace helmpert::specialfun
