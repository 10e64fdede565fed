#pragma once

// Nystrom discretisation of the Helmholtz layer potentials on a closed curve.
//
// Kernel: Gamma_k(x) = -(i/4) H_0^(1)(k|x|), so (Delta + k^2) Gamma_k = delta and
//   S[phi](x)  = int Gamma_k(x-y) phi(y) dsigma(y)
//   D[phi](x)  = int dGamma_k(x-y)/dnu(y) phi(y) dsigma(y)
// with traces  D|+- = (-+1/2 + K) phi  and  dS/dnu|+- = (+-1/2 + K*) phi.
//
// Logarithmic singularities are handled by Kress product quadrature: each
// kernel is split as A(t,s) ln(4 sin^2((t-s)/2)) + B(t,s) with A, B smooth.

#include "helmpert/geometry.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>

namespace helmpert {

/// Complex nodal values attached to a specific curve.
struct BoundaryDensity {
  Eigen::VectorXcd values;
  std::uint64_t curve_id = 0;

  Eigen::Index size() const { return values.size(); }
};

BoundaryDensity make_density(const BoundaryCurve &curve, Eigen::VectorXcd values);
/// Re-tag a density on a perturbed curve as living on the base grid (same node index).
BoundaryDensity pullback(const BoundaryDensity &density, const BoundaryCurve &base);

enum class OperatorKind {
  single,
  double_layer,
  adjoint_double,
  hypersingular,
  first_order_S1,
  first_order_K1,
  first_order_D1,
  first_order_A1,
};

std::string_view to_string(OperatorKind kind);

class OperatorMatrix {
public:
  OperatorMatrix(Eigen::MatrixXcd entries, OperatorKind kind, double wave_number,
                 std::uint64_t curve_id)
      : entries_(std::move(entries)), kind_(kind), wave_number_(wave_number),
        curve_id_(curve_id) {}

  const Eigen::MatrixXcd &entries() const { return entries_; }
  OperatorKind kind() const { return kind_; }
  double wave_number() const { return wave_number_; }
  std::uint64_t curve_id() const { return curve_id_; }
  Eigen::Index size() const { return entries_.rows(); }

  BoundaryDensity apply(const BoundaryDensity &density) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd &values) const { return entries_ * values; }

  /// Row-major complex128, little-endian, preceded by a u64 dimension. Debug aid only.
  void dump(std::ostream &os) const;

private:
  Eigen::MatrixXcd entries_;
  OperatorKind kind_;
  double wave_number_;
  std::uint64_t curve_id_;
};

/// S, K and K* assembled in one kernel pass (they share the Hankel evaluations).
struct LayerOperators {
  OperatorMatrix single;
  OperatorMatrix double_layer;
  OperatorMatrix adjoint_double;
};

LayerOperators assemble_layer_operators(const BoundaryCurve &curve, double k);

OperatorMatrix assemble_single(const BoundaryCurve &curve, double k);
OperatorMatrix assemble_double(const BoundaryCurve &curve, double k);
OperatorMatrix assemble_adjoint_double(const BoundaryCurve &curve, double k);

/// dD[phi]/dnu by Maue's identity  d/ds S[dphi/ds] + k^2 nu . S[nu phi].
OperatorMatrix assemble_hypersingular(const BoundaryCurve &curve, double k);
OperatorMatrix assemble_hypersingular(const BoundaryCurve &curve, const OperatorMatrix &single);

/// Action of the hypersingular operator without forming the matrix.
Eigen::VectorXcd apply_hypersingular(const BoundaryCurve &curve, const OperatorMatrix &single,
                                     const Eigen::VectorXcd &phi);

/// Dense d/ds on the curve's grid: diag(1/|X'|) times the spectral d/dt matrix.
Eigen::MatrixXd arclength_derivative_matrix(const BoundaryCurve &curve);

/// Kress weights R_m, m = 0..N-1, for int ln(4 sin^2((t_i - s)/2)) f(s) ds.
Eigen::VectorXd kress_log_weights(int n);

/// Off-boundary evaluation of layer potentials by trapezoid quadrature.
/// Points must lie at least `min_spacings` node spacings away from the curve.
class LayerPotentialEvaluator {
public:
  LayerPotentialEvaluator(const BoundaryCurve &curve, double k, double min_spacings = 3.0);

  /// Columns of `densities` are independent densities; result row = point.
  Eigen::MatrixXcd single(const Points &points, const Eigen::MatrixXcd &densities) const;
  Eigen::MatrixXcd double_layer(const Points &points, const Eigen::MatrixXcd &densities) const;
  /// Directional derivatives along `directions` (one unit vector per point).
  Eigen::MatrixXcd single_directional(const Points &points, const Points &directions,
                                      const Eigen::MatrixXcd &densities) const;
  Eigen::MatrixXcd double_directional(const Points &points, const Points &directions,
                                      const Eigen::MatrixXcd &densities) const;

private:
  void check_points(const Points &points) const;
  template <class Kernel>
  Eigen::MatrixXcd integrate(const Points &points, const Eigen::MatrixXcd &densities,
                             Kernel kernel) const;

  const BoundaryCurve &curve_;
  double k_;
  double min_distance_;
  Eigen::VectorXd weights_;
};

/// u(x) = S[single](x) - D[double](x) at exterior points.
Eigen::VectorXcd eval_field(const BoundaryCurve &curve, double k, const BoundaryDensity &single,
                            const BoundaryDensity &double_density, const Points &points);

struct JumpResiduals {
  double single_continuity = 0.0;      // max |S|+ - S|-|
  double single_trace = 0.0;           // max |S|+- - S phi|
  double double_exterior = 0.0;        // max |D|+ - (-1/2 + K) phi|
  double double_interior = 0.0;        // max |D|- - (1/2 + K) phi|
  double double_jump = 0.0;            // max |(D|- - D|+) - phi|
  double normal_single_exterior = 0.0; // max |dS/dnu|+ - (1/2 + K*) phi|
  double normal_single_interior = 0.0; // max |dS/dnu|- - (-1/2 + K*) phi|

  double worst() const;
};

struct JumpCheckOptions {
  int fine_nodes = 2048;     // quadrature grid for the off-boundary evaluations
  int offsets = 8;           // number of offsets per side
  double offset_spacings = 4.0; // first offset in units of the fine node spacing
};

/// Evaluates S, D, dS/dnu at x +- delta nu for a sequence of deltas,
/// extrapolates to delta = 0 and compares with the jump-relation predictions.
std::vector<JumpResiduals> jump_check(const BoundaryCurve &curve, double k,
                                      std::span<const BoundaryDensity> densities,
                                      const JumpCheckOptions &options = {});
JumpResiduals jump_check(const BoundaryCurve &curve, double k, const BoundaryDensity &density,
                         const JumpCheckOptions &options = {});

/// Polynomial extrapolation to x = 0 through (xs[i], ys[i]) (Neville).
cplx extrapolate_to_zero(std::span<const double> xs, std::span<const cplx> ys);

} // namespace helmpert
