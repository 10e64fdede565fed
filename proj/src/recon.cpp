#include "helmpert/recon.hpp"

#include "helmpert/errors.hpp"
#include "helmpert/specialfun.hpp"
#include "helmpert/spectral.hpp"
#include "parallel.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>
#include <ostream>
#include <set>
#include <stdexcept>

namespace helmpert {

namespace {

cplx checked_hankel(int n, double x) {
  const cplx h = specialfun::hankel1(n, x);
  if (!std::isfinite(std::abs(h)) || std::abs(h) < 1e-300)
    throw EvaluationAccuracyError("H_" + std::to_string(n) + "(" + std::to_string(x) + ") out of range");
  return h;
}

void check_args(double rho, double k) {
  if (!(rho > 0.0) || !(k > 0.0)) throw std::invalid_argument("rho and k must be positive");
}

} // namespace

cplx sigma1(double rho, int n, double k) {
  check_args(rho, k);
  const int a = std::abs(n);
  const cplx h = checked_hankel(a, k * rho);
  return -k * checked_hankel(a + 1, k * rho) / h + a / rho;
}

cplx sigma1_derivative_form(double rho, int n, double k) {
  check_args(rho, k);
  const int a = std::abs(n);
  return k * specialfun::hankel1_derivative(a, k * rho) / checked_hankel(a, k * rho);
}

std::string_view to_string(CnmVariant v) {
  switch (v) {
  case CnmVariant::corrected: return "corrected";
  case CnmVariant::printed: return "printed";
  case CnmVariant::printed_flipped: return "printed_flipped";
  }
  return "?";
}

ModeCoefficient coeff_cnm(double rho, double k, int n, int m, CnmVariant variant) {
  ModeCoefficient c{n, m, rho, k, sigma1(rho, n, k), sigma1(rho, m, k), {}};
  const cplx hn = checked_hankel(std::abs(n), k * rho), hm = checked_hankel(std::abs(m), k * rho);
  const double nm = static_cast<double>(n) * m;
  switch (variant) {
  case CnmVariant::corrected:
    c.c_nm = rho * (-nm / (rho * rho) - c.sigma1_n / rho - c.sigma1_n * c.sigma1_m - k * k) * hn * hm;
    break;
  case CnmVariant::printed:
  case CnmVariant::printed_flipped: {
    const double tau = variant == CnmVariant::printed ? 1.0 / rho : -1.0 / rho;
    c.c_nm = (-nm + tau * k * c.sigma1_n + k * k * c.sigma1_n * c.sigma1_m - k * k) * std::abs(hn) * hm;
    break;
  }
  }
  return c;
}

cplx coeff_cnm_quadrature(double rho, double k, int n, int m, int nodes) {
  const auto disk = make_disk(rho, nodes);
  const Eigen::VectorXcd dens = leading_density(radiating_mode(n, k, disk), radiating_mode(m, k, disk), disk);
  const Eigen::VectorXcd e = spectral::synthesize({{-(n + m), 1.0}}, nodes);
  const cplx integral = (dens.array() * e.array() * disk.weights().array().cast<cplx>()).sum();
  return integral / (2.0 * std::numbers::pi);
}

std::vector<ModePair> default_mode_pairs(int p_max, double rho, double k) {
  if (p_max < 0) throw std::invalid_argument("p_max must be non-negative");
  std::vector<ModePair> out;
  for (int p = -p_max; p <= p_max; ++p) {
    out.push_back({0, -p});
    if (p != 0) out.push_back({-p, 0});
    if (std::abs(coeff_cnm(rho, k, 0, -p).c_nm) < std::abs(coeff_cnm(rho, k, 1, -p - 1).c_nm))
      out.push_back({1, -p - 1});
  }
  return out;
}

std::vector<Measurement> synthesize_measurements(const BoundaryCurve &curve, double k,
                                                 const PerturbationProfile &profile,
                                                 const std::vector<ModePair> &pairs) {
  const auto moved = profile.is_zero() || profile.epsilon() == 0.0 ? curve : perturb_boundary(curve, profile);
  const ForwardSolver solver(moved, k, ObstacleKind::soft);
  std::vector<Measurement> out(pairs.size());
  detail::parallel_for_chunks(static_cast<std::ptrdiff_t>(pairs.size()), [&](std::ptrdiff_t b, std::ptrdiff_t e) {
    for (std::ptrdiff_t i = b; i < e; ++i) {
      const auto &pr = pairs[static_cast<std::size_t>(i)];
      const auto un = radiating_mode(pr.n, k, moved);
      const auto us = solver.solve_boundary_data(un.dirichlet_trace.values);
      out[static_cast<std::size_t>(i)] = {pr, bracket(us, radiating_mode(pr.m, k, curve), curve)};
    }
  });
  return out;
}

double ReconstructionResult::conjugate_asymmetry() const {
  double worst = 0.0;
  for (const auto &[p, v] : recovered) {
    const auto it = recovered.find(-p);
    if (it != recovered.end()) worst = std::max(worst, std::abs(it->second - std::conj(v)));
  }
  return worst;
}

double ReconstructionResult::max_abs_error() const {
  if (!true_coeffs) throw std::logic_error("no true coefficients attached");
  double worst = 0.0;
  for (const auto &[p, v] : recovered) {
    const auto it = true_coeffs->find(p);
    worst = std::max(worst, std::abs(v - (it == true_coeffs->end() ? cplx(0.0) : it->second)));
  }
  return worst;
}

ReconstructionResult reconstruct(const std::vector<Measurement> &measurements, double rho, double k,
                                 std::optional<double> epsilon, int p_max, double floor) {
  if (epsilon && !(*epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  ReconstructionResult r;
  r.p_max = p_max;
  r.epsilon_used = epsilon.value_or(0.0);
  const double scale = 2.0 * std::numbers::pi * epsilon.value_or(1.0);
  std::vector<int> dead;
  std::set<ModePair> used;
  for (int p = -p_max; p <= p_max; ++p) {
    cplx num = 0.0;
    double den = 0.0;
    for (const auto &meas : measurements) {
      if (meas.pair.n + meas.pair.m != -p) continue;
      const cplx c = coeff_cnm(rho, k, meas.pair.n, meas.pair.m).c_nm;
      if (std::abs(c) <= floor) continue;
      num += std::conj(c) * meas.value;
      den += std::norm(c);
      used.insert(meas.pair);
    }
    if (den == 0.0) {
      dead.push_back(p);
      continue;
    }
    r.recovered[p] = num / (scale * den);
  }
  if (!dead.empty()) {
    std::string list;
    for (int p : dead) list += (list.empty() ? "" : ", ") + std::to_string(p);
    throw UnrecoverableModeError("no usable mode pair for p = " + list, dead);
  }
  r.modes_used.assign(used.begin(), used.end());
  return r;
}

void attach_truth(ReconstructionResult &result, const PerturbationProfile &profile) {
  std::map<int, cplx> truth;
  const double eps_factor = result.epsilon_used > 0.0 ? 1.0 : profile.epsilon();
  for (int p = -result.p_max; p <= result.p_max; ++p) {
    const auto it = profile.fourier_coeffs().find(p);
    truth[p] = eps_factor * (it == profile.fourier_coeffs().end() ? cplx(0.0) : it->second);
  }
  result.per_mode_error.clear();
  for (const auto &[p, v] : result.recovered) {
    const double err = std::abs(v - truth[p]);
    result.per_mode_error[p] = std::abs(truth[p]) > 0.0 ? err / std::abs(truth[p]) : err;
  }
  result.true_coeffs = std::move(truth);
}

void write_reconstruction_json(std::ostream &os, const ReconstructionResult &result, const std::string &stamp) {
  nlohmann::ordered_json j;
  j["version"] = stamp;
  j["p_max"] = result.p_max;
  j["epsilon"] = result.epsilon_used;
  j["scaled_by_epsilon"] = result.epsilon_used == 0.0;
  auto &modes = j["modes"] = nlohmann::ordered_json::array();
  for (const auto &[p, v] : result.recovered) {
    nlohmann::ordered_json row;
    row["p"] = p;
    row["recovered"] = {v.real(), v.imag()};
    if (result.true_coeffs) {
      const cplx t = result.true_coeffs->at(p);
      row["true"] = {t.real(), t.imag()};
      row["error"] = result.per_mode_error.at(p);
    }
    modes.push_back(row);
  }
  auto &pairs = j["pairs"] = nlohmann::ordered_json::array();
  for (const auto &pr : result.modes_used) pairs.push_back({pr.n, pr.m});
  os << j.dump(2) << '\n';
}

void write_reconstruction_csv(std::ostream &os, const ReconstructionResult &result, const std::string &stamp) {
  os << "# " << stamp << '\n';
  os << "p,re_recovered,im_recovered,re_true,im_true,error\n";
  for (const auto &[p, v] : result.recovered) {
    os << p << ',' << format_number(v.real()) << ',' << format_number(v.imag());
    if (result.true_coeffs) {
      const cplx t = result.true_coeffs->at(p);
      os << ',' << format_number(t.real()) << ',' << format_number(t.imag()) << ','
         << format_number(result.per_mode_error.at(p));
    } else {
      os << ",,,";
    }
    os << '\n';
  }
}

} // namespace helmpert
