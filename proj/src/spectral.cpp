#include "helmpert/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace helmpert::spectral {

namespace {

std::mutex &planner_mutex() {
  static std::mutex m;
  return m;
}

void require_even(Eigen::Index n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("spectral grid size must be even and >= 2");
}

// Unnormalised DFT; sign = FFTW_FORWARD or FFTW_BACKWARD.
Eigen::VectorXcd dft(const Eigen::VectorXcd &in, int sign) {
  const int n = static_cast<int>(in.size());
  Eigen::VectorXcd out(n);
  Eigen::VectorXcd src = in; // FFTW_ESTIMATE does not touch input, but keep ours const
  auto *ip = reinterpret_cast<fftw_complex *>(src.data());
  auto *op = reinterpret_cast<fftw_complex *>(out.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, ip, op, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

} // namespace

Eigen::VectorXcd fourier_coefficients(const Eigen::VectorXcd &values) {
  const Eigen::Index n = values.size();
  require_even(n);
  const Eigen::VectorXcd raw = dft(values, FFTW_FORWARD) / static_cast<double>(n);
  Eigen::VectorXcd c(n);
  const Eigen::Index half = n / 2;
  for (Eigen::Index p = -half; p < half; ++p) c(p + half) = raw((p + n) % n);
  return c;
}

Eigen::VectorXcd fourier_coefficients(const Eigen::VectorXd &values) {
  return fourier_coefficients(Eigen::VectorXcd(values.cast<cplx>()));
}

cplx mode(const Eigen::VectorXcd &values, int p) {
  const auto n = static_cast<int>(values.size());
  if (2 * std::abs(p) >= n) throw std::out_of_range("mode beyond grid resolution");
  return fourier_coefficients(values)(p + n / 2);
}

Eigen::VectorXcd synthesize(const std::map<int, cplx> &coeffs, int n) {
  require_even(n);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * std::numbers::pi * j / n;
    for (const auto &[p, c] : coeffs) out(j) += c * std::polar(1.0, p * t);
  }
  return out;
}

Eigen::VectorXcd derivative(const Eigen::VectorXcd &values) {
  const Eigen::Index n = values.size();
  require_even(n);
  Eigen::VectorXcd hat = dft(values, FFTW_FORWARD);
  for (Eigen::Index q = 0; q < n; ++q) {
    const Eigen::Index p = q < n / 2 ? q : q - n;
    hat(q) *= (q == n / 2) ? cplx(0.0) : cplx(0.0, static_cast<double>(p));
  }
  return dft(hat, FFTW_BACKWARD) / static_cast<double>(n);
}

Eigen::VectorXd derivative(const Eigen::VectorXd &values) {
  return derivative(Eigen::VectorXcd(values.cast<cplx>())).real();
}

Eigen::VectorXd second_derivative(const Eigen::VectorXd &values) {
  const Eigen::Index n = values.size();
  require_even(n);
  Eigen::VectorXcd hat = dft(values.cast<cplx>(), FFTW_FORWARD);
  for (Eigen::Index q = 0; q < n; ++q) {
    const double p = static_cast<double>(q < n / 2 ? q : q - n);
    hat(q) *= (q == n / 2) ? 0.0 : -p * p;
  }
  return (dft(hat, FFTW_BACKWARD) / static_cast<double>(n)).real();
}

Eigen::VectorXcd resample(const Eigen::VectorXcd &values, int m) {
  const Eigen::Index n = values.size();
  require_even(n);
  require_even(m);
  if (m < n) throw std::invalid_argument("resample only refines the grid");
  const Eigen::VectorXcd hat = dft(values, FFTW_FORWARD);
  Eigen::VectorXcd padded = Eigen::VectorXcd::Zero(m);
  const Eigen::Index half = n / 2;
  for (Eigen::Index q = 0; q < half; ++q) padded(q) = hat(q);
  for (Eigen::Index q = half + 1; q < n; ++q) padded(m - n + q) = hat(q);
  // split the Nyquist mode symmetrically so real data stays real
  padded(half) += 0.5 * hat(half);
  padded(m - half) += 0.5 * hat(half);
  return dft(padded, FFTW_BACKWARD) / static_cast<double>(n);
}

Eigen::VectorXd resample(const Eigen::VectorXd &values, int m) {
  return resample(Eigen::VectorXcd(values.cast<cplx>()), m).real();
}

Eigen::MatrixXd differentiation_matrix(int n) {
  require_even(n);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  const double h = 2.0 * std::numbers::pi / n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double sign = ((i - j) % 2 == 0) ? 1.0 : -1.0;
      d(i, j) = 0.5 * sign / std::tan(0.5 * (i - j) * h);
    }
  }
  return d;
}

double tail_magnitude(const Eigen::VectorXcd &values, int cutoff) {
  const Eigen::VectorXcd c = fourier_coefficients(values);
  const auto half = static_cast<int>(values.size() / 2);
  double worst = 0.0;
  for (int p = -half; p < half; ++p) {
    if (std::abs(p) >= cutoff) worst = std::max(worst, std::abs(c(p + half)));
  }
  return worst;
}

} // namespace helmpert::spectral
