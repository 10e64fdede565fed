#include "helmpert/measure.hpp"

#include "helmpert/errors.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <ostream>

namespace helmpert {

cplx bracket(const ScatterSolution &perturbed, const ScatterSolution &test, const BoundaryCurve &curve) {
  if (test.boundary.id() != curve.id())
    throw CurveMismatchError("bracket: test field must live on the base curve");
  if (perturbed.dirichlet_trace.size() != curve.size() || perturbed.neumann_trace.size() != curve.size())
    throw CurveMismatchError("bracket: perturbed traces have a different node count");
  const Eigen::VectorXcd integrand = perturbed.neumann_trace.values.cwiseProduct(test.dirichlet_trace.values) -
                                     perturbed.dirichlet_trace.values.cwiseProduct(test.neumann_trace.values);
  return (integrand.array() * curve.weights().array().cast<cplx>()).sum();
}

Eigen::VectorXcd leading_density(const ScatterSolution &u, const ScatterSolution &v, const BoundaryCurve &curve) {
  if (u.boundary.id() != curve.id() || v.boundary.id() != curve.id())
    throw CurveMismatchError("leading_term: fields must live on the base curve");
  const double k2 = u.k * u.k;
  const Eigen::VectorXcd ut = curve.arclength_derivative(u.dirichlet_trace.values);
  const Eigen::VectorXcd vt = curve.arclength_derivative(v.dirichlet_trace.values);
  const auto &un = u.neumann_trace.values, &vn = v.neumann_trace.values;
  const auto &uu = u.dirichlet_trace.values, &vv = v.dirichlet_trace.values;
  const Eigen::ArrayXcd kappa = curve.curvature().cast<cplx>().array();
  return ut.array() * vt.array() - kappa * un.array() * vv.array() - un.array() * vn.array() -
         k2 * uu.array() * vv.array();
}

cplx leading_term(const ScatterSolution &u, const ScatterSolution &v, const PerturbationProfile &profile,
                  const BoundaryCurve &curve) {
  if (profile.size() != curve.size()) throw CurveMismatchError("leading_term: profile grid differs");
  const Eigen::ArrayXd hw = profile.nodal_values().array() * curve.weights().array();
  return (leading_density(u, v, curve).array() * hw.cast<cplx>()).sum();
}

double fit_log_slope(const std::vector<double> &x, const std::vector<double> &y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope fit needs at least two points");
  const auto n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

bool non_monotone(const std::vector<double> &residuals) {
  for (std::size_t i = 1; i < residuals.size(); ++i)
    if (!(residuals[i] < residuals[i - 1])) return true;
  return false;
}

OrderStudy order_study(const OrderStudySetup &setup, const std::vector<double> &epsilons) {
  if (epsilons.size() < 3) throw std::invalid_argument("order study needs at least three epsilon values");
  for (std::size_t i = 1; i < epsilons.size(); ++i)
    if (!(epsilons[i] < epsilons[i - 1])) throw std::invalid_argument("epsilon list must be decreasing");

  const auto &curve = setup.curve;
  const auto u = ForwardSolver(curve, setup.k, setup.kind).solve(setup.incident);
  const auto v = radiating_mode(setup.test_mode, setup.k, curve);
  const cplx lead = leading_term(u, v, setup.profile, curve);

  auto one = [&](double eps) {
    const auto profile = setup.profile.with_epsilon(eps);
    const BoundaryCurve moved = perturb_boundary(curve, profile);
    const auto ue = ForwardSolver(moved, setup.k, setup.kind).solve(setup.incident);
    const cplx b = bracket(ue, v, curve);
    return BracketResult{b, eps, lead, b - eps * lead};
  };

  std::vector<std::future<BracketResult>> jobs;
  for (double eps : epsilons) jobs.push_back(std::async(std::launch::async, one, eps));
  OrderStudy study;
  std::vector<double> res;
  for (auto &j : jobs) {
    study.rows.push_back(j.get());
    res.push_back(std::abs(study.rows.back().residual));
  }
  study.slope = fit_log_slope(epsilons, res);
  study.floor_contaminated = non_monotone(res);
  return study;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_order_csv(std::ostream &os, const OrderStudy &study, const std::string &stamp) {
  os << "# " << stamp << '\n';
  os << "epsilon,re_bracket,im_bracket,re_leading,im_leading,abs_residual,fitted_slope\n";
  for (const auto &r : study.rows) {
    const cplx lead = r.epsilon * r.leading_term;
    os << format_number(r.epsilon) << ',' << format_number(r.value.real()) << ',' << format_number(r.value.imag())
       << ',' << format_number(lead.real()) << ',' << format_number(lead.imag()) << ','
       << format_number(std::abs(r.residual)) << ',' << format_number(study.slope) << '\n';
  }
}

} // namespace helmpert
