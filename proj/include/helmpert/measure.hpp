#pragma once

// The boundary bracket [v, w, Psi_eps, D] and its first-order expansion in eps.

#include "helmpert/forward.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace helmpert {

/// int dv/dnu(x~) w(x) dsigma(x) - int v(x~) dw/dnu(x) dsigma(x) over the base curve.
/// `perturbed` lives on the deformed curve, node i being the image of node i of `curve`.
cplx bracket(const ScatterSolution &perturbed, const ScatterSolution &test, const BoundaryCurve &curve);

/// Nodal integrand u_T v_T - kappa u_nu v - u_nu v_nu - k^2 u v of the leading term.
Eigen::VectorXcd leading_density(const ScatterSolution &u, const ScatterSolution &v, const BoundaryCurve &curve);

/// int h [u_T v_T - kappa u_nu v - u_nu v_nu - k^2 u v] dsigma (kappa > 0 convex).
cplx leading_term(const ScatterSolution &u, const ScatterSolution &v, const PerturbationProfile &profile,
                  const BoundaryCurve &curve);

struct BracketResult {
  cplx value;
  double epsilon = 0.0;
  cplx leading_term; // not multiplied by epsilon
  cplx residual;     // value - epsilon * leading_term
};

/// Least-squares slope of log y against log x.
double fit_log_slope(const std::vector<double> &x, const std::vector<double> &y);

/// True when |y| fails to decrease along the (decreasing) eps sequence.
bool non_monotone(const std::vector<double> &residuals);

struct OrderStudySetup {
  BoundaryCurve curve;
  double k = 1.0;
  ObstacleKind kind = ObstacleKind::soft;
  IncidentField incident = IncidentField::plane_wave(1.0, Vec2(1.0, 0.0));
  PerturbationProfile profile; // epsilon ignored; values come from the study list
  int test_mode = 1;           // v^s = H_|m|(kr) e^{i m theta}
};

struct OrderStudy {
  std::vector<BracketResult> rows;
  double slope = 0.0;
  bool floor_contaminated = false;

  bool slope_within(double lo, double hi) const { return slope >= lo && slope <= hi; }
};

/// Brackets at each eps (solved on the deformed curves concurrently), their
/// defect against eps * leading_term, and the fitted log-log slope.
OrderStudy order_study(const OrderStudySetup &setup, const std::vector<double> &epsilons);

/// epsilon, re(bracket), im(bracket), re(leading), im(leading), abs(residual), fitted_slope
/// where "leading" is eps * leading_term. First line is a comment carrying `stamp`.
void write_order_csv(std::ostream &os, const OrderStudy &study, const std::string &stamp);

/// Fixed-format decimal used by every CSV writer (round-trip precision).
std::string format_number(double v);

} // namespace helmpert
