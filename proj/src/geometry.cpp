#include "helmpert/geometry.hpp"

#include "helmpert/errors.hpp"
#include "helmpert/spectral.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <string>

namespace helmpert {

namespace {

std::atomic<std::uint64_t> next_curve_id{1};

void check_node_count(int n) {
  if (n < 16 || n % 2 != 0) {
    throw GeometryError("node count must be even and >= 16, got " + std::to_string(n));
  }
}

double theta(Eigen::Index j, Eigen::Index n) {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
}

// Fills tangent/normal/curvature/jacobian from first and second parameter
// derivatives of the node coordinates.
void fill_differentials(const Points &d1, const Points &d2, Points &tangents, Points &normals,
                        Eigen::VectorXd &curvature, Eigen::VectorXd &jacobian) {
  const Eigen::Index n = d1.rows();
  tangents.resize(n, 2);
  normals.resize(n, 2);
  curvature.resize(n);
  jacobian.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double jac = std::hypot(d1(j, 0), d1(j, 1));
    if (!(jac > 0.0)) throw GeometryError("degenerate parametrization (|X'| = 0)");
    jacobian(j) = jac;
    tangents(j, 0) = d1(j, 0) / jac;
    tangents(j, 1) = d1(j, 1) / jac;
    normals(j, 0) = tangents(j, 1);
    normals(j, 1) = -tangents(j, 0);
    curvature(j) = (d1(j, 0) * d2(j, 1) - d1(j, 1) * d2(j, 0)) / (jac * jac * jac);
  }
}

} // namespace

void BoundaryCurve::assign_id() { id_ = next_curve_id.fetch_add(1); }

double BoundaryCurve::param_period() const { return 2.0 * std::numbers::pi; }

double BoundaryCurve::param_step() const {
  return param_period() / static_cast<double>(size());
}

Eigen::VectorXd BoundaryCurve::weights() const { return jacobian_ * param_step(); }

double BoundaryCurve::max_spacing() const {
  double worst = 0.0;
  const Eigen::Index n = size();
  for (Eigen::Index j = 0; j < n; ++j) {
    worst = std::max(worst, (nodes_.row((j + 1) % n) - nodes_.row(j)).norm());
  }
  return worst;
}

int BoundaryCurve::winding_number(const Vec2 &p) const {
  double total = 0.0;
  const Eigen::Index n = size();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Vec2 a = node(j) - p;
    const Vec2 b = node((j + 1) % n) - p;
    total += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

double BoundaryCurve::distance_to_nodes(const Vec2 &p) const {
  return (nodes_.rowwise() - p.transpose()).rowwise().norm().minCoeff();
}

Eigen::VectorXcd BoundaryCurve::arclength_derivative(const Eigen::VectorXcd &f) const {
  if (f.size() != size()) throw CurveMismatchError("nodal function size does not match curve");
  return spectral::derivative(f).cwiseQuotient(jacobian_.cast<cplx>());
}

Eigen::VectorXd BoundaryCurve::arclength_derivative(const Eigen::VectorXd &f) const {
  if (f.size() != size()) throw CurveMismatchError("nodal function size does not match curve");
  return spectral::derivative(f).cwiseQuotient(jacobian_);
}

BoundaryCurve BoundaryCurve::from_nodes(const Points &nodes) {
  const auto n = static_cast<int>(nodes.rows());
  check_node_count(n);
  Points d1(n, 2), d2(n, 2);
  for (int c = 0; c < 2; ++c) {
    const Eigen::VectorXd x = nodes.col(c);
    d1.col(c) = spectral::derivative(x);
    d2.col(c) = spectral::second_derivative(x);
  }
  BoundaryCurve curve;
  curve.nodes_ = nodes;
  fill_differentials(d1, d2, curve.tangents_, curve.normals_, curve.curvature_, curve.jacobian_);
  curve.assign_id();
  return curve;
}

BoundaryCurve BoundaryCurve::resampled(int m) const {
  if (m == size()) return *this;
  if (radial_profile_) {
    BoundaryCurve out = make_star_curve(*radial_profile_, m);
    if (disk_radius_) out.disk_radius_ = disk_radius_;
    return out;
  }
  Points fine(m, 2);
  for (int c = 0; c < 2; ++c) {
    const Eigen::VectorXd x = nodes_.col(c);
    fine.col(c) = spectral::resample(x, m);
  }
  return from_nodes(fine);
}

BoundaryCurve make_disk(double radius, int n_nodes) {
  check_node_count(n_nodes);
  if (!(radius > 0.0)) throw GeometryError("disk radius must be positive");
  BoundaryCurve c;
  c.nodes_.resize(n_nodes, 2);
  c.tangents_.resize(n_nodes, 2);
  c.normals_.resize(n_nodes, 2);
  c.curvature_ = Eigen::VectorXd::Constant(n_nodes, 1.0 / radius);
  c.jacobian_ = Eigen::VectorXd::Constant(n_nodes, radius);
  for (int j = 0; j < n_nodes; ++j) {
    const double t = theta(j, n_nodes);
    const double ct = std::cos(t), st = std::sin(t);
    c.nodes_.row(j) << radius * ct, radius * st;
    c.tangents_.row(j) << -st, ct;
    c.normals_.row(j) << ct, st;
  }
  c.radial_profile_ = FourierSeries{{0, cplx(radius, 0.0)}};
  c.disk_radius_ = radius;
  c.assign_id();
  return c;
}

BoundaryCurve make_smooth_curve(const Eigen::VectorXd &radial_profile, int n_nodes) {
  check_node_count(n_nodes);
  const Eigen::Index m = radial_profile.size();
  if (m < 4 || m % 2 != 0) throw GeometryError("radial profile needs an even number of samples");
  if (radial_profile.minCoeff() <= 0.0) throw GeometryError("radial profile must be strictly positive");
  // The profile must be resolved on its own grid: the top third of the
  // spectrum carries no more than round-off. This is our C^2 proxy.
  const Eigen::VectorXcd samples = radial_profile.cast<cplx>();
  const double tail = spectral::tail_magnitude(samples, static_cast<int>(m / 3));
  if (tail > 1e-8 * radial_profile.cwiseAbs().maxCoeff()) {
    throw GeometryError("radial profile is not spectrally resolved (tail " + std::to_string(tail) +
                        ")");
  }
  const Eigen::VectorXcd c = spectral::fourier_coefficients(samples);
  FourierSeries coeffs;
  const auto half = static_cast<int>(m / 2);
  for (int p = -half + 1; p < half; ++p) {
    if (std::abs(c(p + half)) > 1e-15 * std::abs(c(half))) coeffs[p] = c(p + half);
  }
  return make_star_curve(coeffs, n_nodes);
}

BoundaryCurve make_star_curve(const FourierSeries &radius_coeffs, int n_nodes) {
  check_node_count(n_nodes);
  for (const auto &[p, cp] : radius_coeffs) {
    if (2 * std::abs(p) >= n_nodes) throw GeometryError("radial mode beyond grid resolution");
    const auto it = radius_coeffs.find(-p);
    const cplx mirror = it == radius_coeffs.end() ? cplx(0.0) : it->second;
    if (std::abs(mirror - std::conj(cp)) > 1e-12) {
      throw GeometryError("radial coefficients must be conjugate symmetric");
    }
  }
  Eigen::VectorXd r(n_nodes), dr(n_nodes), ddr(n_nodes);
  for (int j = 0; j < n_nodes; ++j) {
    const double t = theta(j, n_nodes);
    cplx v = 0.0, dv = 0.0, ddv = 0.0;
    for (const auto &[p, cp] : radius_coeffs) {
      const cplx e = cp * std::polar(1.0, p * t);
      v += e;
      dv += cplx(0.0, p) * e;
      ddv += -static_cast<double>(p) * p * e;
    }
    r(j) = v.real();
    dr(j) = dv.real();
    ddr(j) = ddv.real();
  }
  if (r.minCoeff() <= 0.0) throw GeometryError("radial profile must be strictly positive");

  Points nodes(n_nodes, 2), d1(n_nodes, 2), d2(n_nodes, 2);
  for (int j = 0; j < n_nodes; ++j) {
    const double t = theta(j, n_nodes);
    const double ct = std::cos(t), st = std::sin(t);
    nodes.row(j) << r(j) * ct, r(j) * st;
    d1.row(j) << dr(j) * ct - r(j) * st, dr(j) * st + r(j) * ct;
    d2.row(j) << ddr(j) * ct - 2.0 * dr(j) * st - r(j) * ct,
        ddr(j) * st + 2.0 * dr(j) * ct - r(j) * st;
  }
  BoundaryCurve c;
  c.nodes_ = nodes;
  fill_differentials(d1, d2, c.tangents_, c.normals_, c.curvature_, c.jacobian_);
  c.radial_profile_ = radius_coeffs;
  c.assign_id();
  return c;
}

PerturbationProfile PerturbationProfile::from_coefficients(const FourierSeries &coeffs,
                                                           double epsilon, int n_nodes) {
  if (n_nodes < 2 || n_nodes % 2 != 0) throw std::invalid_argument("profile grid must be even");
  for (const auto &[p, cp] : coeffs) {
    if (2 * std::abs(p) >= n_nodes) throw std::invalid_argument("profile mode beyond grid resolution");
    const auto it = coeffs.find(-p);
    const cplx mirror = it == coeffs.end() ? cplx(0.0) : it->second;
    if (std::abs(mirror - std::conj(cp)) > 1e-12) {
      throw std::invalid_argument("profile coefficients must be conjugate symmetric (h is real)");
    }
  }
  PerturbationProfile out;
  out.coeffs_ = coeffs;
  out.epsilon_ = epsilon;
  out.values_.resize(n_nodes);
  out.dvalues_.resize(n_nodes);
  for (int j = 0; j < n_nodes; ++j) {
    const double t = theta(j, n_nodes);
    cplx v = 0.0, dv = 0.0;
    for (const auto &[p, cp] : coeffs) {
      const cplx e = cp * std::polar(1.0, p * t);
      v += e;
      dv += cplx(0.0, p) * e;
    }
    if (std::abs(v.imag()) > 1e-12) throw std::logic_error("synthesized profile is not real");
    out.values_(j) = v.real();
    out.dvalues_(j) = dv.real();
  }
  return out;
}

PerturbationProfile PerturbationProfile::from_nodal(const Eigen::VectorXd &values, double epsilon) {
  const Eigen::Index n = values.size();
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("profile grid must be even");
  const Eigen::VectorXcd c = spectral::fourier_coefficients(values);
  PerturbationProfile out;
  const auto half = static_cast<int>(n / 2);
  for (int p = -half + 1; p < half; ++p) {
    if (std::abs(c(p + half)) > 1e-15) out.coeffs_[p] = c(p + half);
  }
  out.values_ = values;
  out.dvalues_ = spectral::derivative(values);
  out.epsilon_ = epsilon;
  return out;
}

PerturbationProfile PerturbationProfile::cosine(double amplitude, int p, double epsilon,
                                                int n_nodes) {
  if (p == 0) return from_coefficients({{0, cplx(amplitude, 0.0)}}, epsilon, n_nodes);
  return from_coefficients({{p, cplx(0.5 * amplitude, 0.0)}, {-p, cplx(0.5 * amplitude, 0.0)}},
                           epsilon, n_nodes);
}

PerturbationProfile PerturbationProfile::sine(double amplitude, int p, double epsilon,
                                              int n_nodes) {
  if (p == 0) return zero(n_nodes, epsilon);
  return from_coefficients({{p, cplx(0.0, -0.5 * amplitude)}, {-p, cplx(0.0, 0.5 * amplitude)}},
                           epsilon, n_nodes);
}

PerturbationProfile PerturbationProfile::zero(int n_nodes, double epsilon) {
  return from_coefficients({}, epsilon, n_nodes);
}

PerturbationProfile PerturbationProfile::with_epsilon(double epsilon) const {
  PerturbationProfile out = *this;
  out.epsilon_ = epsilon;
  return out;
}

PerturbationProfile PerturbationProfile::scaled(double factor) const {
  PerturbationProfile out = *this;
  for (auto &[p, c] : out.coeffs_) c *= factor;
  out.values_ *= factor;
  out.dvalues_ *= factor;
  return out;
}

bool PerturbationProfile::is_zero() const {
  return values_.size() == 0 || values_.cwiseAbs().maxCoeff() == 0.0;
}

BoundaryCurve perturb_boundary(const BoundaryCurve &curve, const PerturbationProfile &profile) {
  if (profile.size() != curve.size()) {
    throw CurveMismatchError("profile sampled on a different grid than the curve");
  }
  const double eps = profile.epsilon();
  if (profile.is_zero() || eps == 0.0) return curve;
  const double bound = std::abs(eps) * profile.nodal_values().cwiseAbs().maxCoeff() *
                       curve.curvature().cwiseAbs().maxCoeff();
  if (!(bound < 0.5)) {
    throw GeometryError("deformation too large: eps*max|h|*max|kappa| = " + std::to_string(bound) +
                        " (must be < 0.5)");
  }
  Points moved = curve.nodes();
  const Eigen::VectorXd &h = profile.nodal_values();
  for (Eigen::Index j = 0; j < curve.size(); ++j) {
    moved.row(j) += eps * h(j) * curve.normals().row(j);
  }
  return BoundaryCurve::from_nodes(moved);
}

Eigen::VectorXd perturbed_length_element(const BoundaryCurve &curve,
                                         const PerturbationProfile &profile) {
  const double eps = profile.epsilon();
  const Eigen::VectorXd dh = profile.nodal_param_derivative().cwiseQuotient(curve.jacobian());
  const Eigen::VectorXd stretch =
      (Eigen::VectorXd::Ones(curve.size()) + eps * profile.nodal_values().cwiseProduct(curve.curvature()));
  return (stretch.array().square() + (eps * dh.array()).square()).sqrt();
}

} // namespace helmpert
