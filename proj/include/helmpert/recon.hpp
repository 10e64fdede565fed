#pragma once

// Recovery of the Fourier coefficients h_p of a disk perturbation from brackets of
// radiating modes u_n = H_|n|(kr) e^{in theta}.

#include "helmpert/measure.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace helmpert {

/// k H'_|n|(k rho) / H_|n|(k rho), evaluated as -k H_{|n|+1}/H_|n| + |n|/rho.
cplx sigma1(double rho, int n, double k);
/// Same quantity through the derivative table; used as a cross-check.
cplx sigma1_derivative_form(double rho, int n, double k);

enum class CnmVariant {
  corrected,       // rho [-nm/rho^2 - sigma_n/rho - sigma_n sigma_m - k^2] H_|n| H_|m|
  printed,         // [-nm + tau k sigma_n + k^2 sigma_n sigma_m - k^2] |H_|n|| H_|m|, tau = 1/rho
  printed_flipped, // as printed with tau = -1/rho
};

std::string_view to_string(CnmVariant v);

struct ModeCoefficient {
  int n = 0, m = 0;
  double rho = 1.0, k = 1.0;
  cplx sigma1_n, sigma1_m;
  cplx c_nm;
};

/// Bracket of (u_n on the deformed disk, u_m) = eps c_nm int h e^{i(n+m)theta} dtheta + O(eps^2).
ModeCoefficient coeff_cnm(double rho, double k, int n, int m, CnmVariant variant = CnmVariant::corrected);

/// c_nm by trapezoid quadrature of the leading-term integrand on an N-node disk.
cplx coeff_cnm_quadrature(double rho, double k, int n, int m, int nodes = 128);

struct ModePair {
  int n = 0, m = 0;
  auto operator<=>(const ModePair &) const = default;
};

struct Measurement {
  ModePair pair;
  cplx value; // [u^s_eps, u_m]
};

/// For each |p| <= p_max: (0,-p), (-p,0), and (1,-p-1) when |c_{0,-p}| < |c_{1,-p-1}|.
std::vector<ModePair> default_mode_pairs(int p_max, double rho, double k);

/// Soft solves on the deformed curve with boundary data u_n (so the eps -> 0 limit of
/// the scattered field is u_n), bracketed against u_m on the base curve.
std::vector<Measurement> synthesize_measurements(const BoundaryCurve &curve, double k,
                                                 const PerturbationProfile &profile,
                                                 const std::vector<ModePair> &pairs);

struct ReconstructionResult {
  int p_max = 0;
  std::map<int, cplx> recovered;
  std::optional<std::map<int, cplx>> true_coeffs;
  std::map<int, double> per_mode_error; // relative where |h_p| > 0, absolute otherwise
  double epsilon_used = 0.0;            // 0: recovered holds eps * h_p
  std::vector<ModePair> modes_used;

  /// max_p |h_{-p} - conj(h_p)|
  double conjugate_asymmetry() const;
  /// max_p |recovered_p - true_p|
  double max_abs_error() const;
};

/// h_p = sum conj(c) b / (2 pi eps sum |c|^2) over pairs with n + m = -p and |c| > floor.
/// Without eps the products eps h_p are returned.
ReconstructionResult reconstruct(const std::vector<Measurement> &measurements, double rho, double k,
                                 std::optional<double> epsilon, int p_max, double floor = 1e-8);

/// Fills true_coeffs and per_mode_error from a known profile.
void attach_truth(ReconstructionResult &result, const PerturbationProfile &profile);

void write_reconstruction_json(std::ostream &os, const ReconstructionResult &result, const std::string &stamp);
/// p, re_recovered, im_recovered, re_true, im_true, error
void write_reconstruction_csv(std::ostream &os, const ReconstructionResult &result, const std::string &stamp);

} // namespace helmpert
