#pragma once

// Closed star-shaped C^2 curves sampled on an equispaced parameter grid
// t_j = 2 pi j / N, their differential data, and the normal deformation
// x -> x + eps h(x) nu(x).
//
// Orientation is counter-clockwise, so nu = (T_y, -T_x) points outward.
// Curvature is signed so that it is positive on convex curves
// (X'' = -kappa nu in arclength); a disk of radius rho has kappa = 1/rho.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>

namespace helmpert {

using cplx = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using Points = Eigen::MatrixX2d;

/// Fourier coefficients c_p of a real periodic function f(t) = sum_p c_p e^{ipt}.
using FourierSeries = std::map<int, cplx>;

class BoundaryCurve {
public:
  /// Build from node coordinates; differential data is computed spectrally.
  static BoundaryCurve from_nodes(const Points &nodes);

  Eigen::Index size() const { return nodes_.rows(); }
  std::uint64_t id() const { return id_; }
  double param_period() const;
  double param_step() const;

  const Points &nodes() const { return nodes_; }
  const Points &tangents() const { return tangents_; }
  const Points &normals() const { return normals_; }
  const Eigen::VectorXd &curvature() const { return curvature_; }
  const Eigen::VectorXd &jacobian() const { return jacobian_; }

  Vec2 node(Eigen::Index j) const { return nodes_.row(j).transpose(); }
  Vec2 normal(Eigen::Index j) const { return normals_.row(j).transpose(); }
  Vec2 tangent(Eigen::Index j) const { return tangents_.row(j).transpose(); }

  /// Trapezoid weights for d sigma: jacobian * 2 pi / N.
  Eigen::VectorXd weights() const;
  double perimeter() const { return weights().sum(); }
  /// Largest arclength distance between consecutive nodes.
  double max_spacing() const;

  /// Radial Fourier profile this curve was built from, if star-shaped by construction.
  const std::optional<FourierSeries> &radial_profile() const { return radial_profile_; }

  /// True for curves made by make_disk (exact circle about the origin).
  std::optional<double> disk_radius() const { return disk_radius_; }

  /// Winding number of the closed node polygon around p.
  int winding_number(const Vec2 &p) const;
  bool contains(const Vec2 &p) const { return winding_number(p) != 0; }
  double distance_to_nodes(const Vec2 &p) const;

  /// d/ds of a nodal function via spectral differentiation.
  Eigen::VectorXcd arclength_derivative(const Eigen::VectorXcd &f) const;
  Eigen::VectorXd arclength_derivative(const Eigen::VectorXd &f) const;

  /// Same curve re-sampled on an M-point grid by trigonometric interpolation.
  BoundaryCurve resampled(int m) const;

private:
  friend BoundaryCurve make_disk(double, int);
  friend BoundaryCurve make_smooth_curve(const Eigen::VectorXd &, int);
  friend BoundaryCurve make_star_curve(const FourierSeries &, int);

  BoundaryCurve() = default;
  void assign_id();

  Points nodes_, tangents_, normals_;
  Eigen::VectorXd curvature_, jacobian_;
  std::optional<FourierSeries> radial_profile_;
  std::optional<double> disk_radius_;
  std::uint64_t id_ = 0;
};

/// Circle of the given radius centred at the origin; node 0 at (radius, 0).
BoundaryCurve make_disk(double radius, int n_nodes);

/// r(theta)(cos theta, sin theta) from samples of r on an equispaced grid
/// (any even count; resampled to n_nodes).
BoundaryCurve make_smooth_curve(const Eigen::VectorXd &radial_profile, int n_nodes);

/// Star-shaped curve from radial Fourier coefficients.
BoundaryCurve make_star_curve(const FourierSeries &radius_coeffs, int n_nodes);

/// The normal deformation h of a base curve, sampled on that curve's grid.
class PerturbationProfile {
public:
  /// h from Fourier coefficients; they must be conjugate symmetric (h real).
  static PerturbationProfile from_coefficients(const FourierSeries &coeffs, double epsilon,
                                               int n_nodes);
  /// h from nodal samples; coefficients are recovered by FFT.
  static PerturbationProfile from_nodal(const Eigen::VectorXd &values, double epsilon);

  static PerturbationProfile cosine(double amplitude, int p, double epsilon, int n_nodes);
  static PerturbationProfile sine(double amplitude, int p, double epsilon, int n_nodes);
  static PerturbationProfile zero(int n_nodes, double epsilon = 0.0);

  const FourierSeries &fourier_coeffs() const { return coeffs_; }
  const Eigen::VectorXd &nodal_values() const { return values_; }
  /// dh/dt with respect to the grid parameter (divide by the jacobian for d/ds).
  const Eigen::VectorXd &nodal_param_derivative() const { return dvalues_; }
  double epsilon() const { return epsilon_; }
  Eigen::Index size() const { return values_.size(); }

  PerturbationProfile with_epsilon(double epsilon) const;
  /// h scaled by a real factor (epsilon kept).
  PerturbationProfile scaled(double factor) const;
  bool is_zero() const;

private:
  FourierSeries coeffs_;
  Eigen::VectorXd values_, dvalues_;
  double epsilon_ = 0.0;
};

/// Nodes moved to x + eps h(x) nu(x); node j of the result is the image of node j.
/// Throws GeometryError unless eps * max|h| * max|kappa| < 0.5.
BoundaryCurve perturb_boundary(const BoundaryCurve &curve, const PerturbationProfile &profile);

/// Length element ratio d sigma(x~)/d sigma(x) from base-curve data:
/// sqrt((1 + eps h kappa)^2 + eps^2 (dh/ds)^2).
Eigen::VectorXd perturbed_length_element(const BoundaryCurve &curve,
                                         const PerturbationProfile &profile);

} // namespace helmpert
