#pragma once

// Periodic spectral tools on an equispaced grid t_j = 2 pi j / N, N even.

#include <Eigen/Dense>

#include <complex>
#include <map>

namespace helmpert::spectral {

using cplx = std::complex<double>;

/// c_p for p = -N/2 .. N/2-1 such that f(t_j) = sum_p c_p e^{i p t_j}.
/// Entry index is p + N/2.
Eigen::VectorXcd fourier_coefficients(const Eigen::VectorXcd &values);
Eigen::VectorXcd fourier_coefficients(const Eigen::VectorXd &values);

/// Coefficient of mode p (any integer with |p| < N/2) from nodal values.
cplx mode(const Eigen::VectorXcd &values, int p);

/// Nodal values of sum_p c_p e^{i p t} on an N-point grid.
Eigen::VectorXcd synthesize(const std::map<int, cplx> &coeffs, int n);

/// d/dt of a periodic function; the Nyquist mode is dropped.
Eigen::VectorXcd derivative(const Eigen::VectorXcd &values);
Eigen::VectorXd derivative(const Eigen::VectorXd &values);
Eigen::VectorXd second_derivative(const Eigen::VectorXd &values);

/// Trigonometric interpolation onto an M-point grid (M >= N, M even).
Eigen::VectorXcd resample(const Eigen::VectorXcd &values, int m);
Eigen::VectorXd resample(const Eigen::VectorXd &values, int m);

/// Dense matrix of `derivative` (Nyquist dropped): D_ij = 0.5 (-1)^{i-j} cot((t_i - t_j)/2).
Eigen::MatrixXd differentiation_matrix(int n);

/// max_{|p| >= cutoff} |c_p|; a cheap smoothness/resolution indicator.
double tail_magnitude(const Eigen::VectorXcd &values, int cutoff);

} // namespace helmpert::spectral
