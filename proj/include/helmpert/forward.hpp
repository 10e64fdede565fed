#pragma once

// Exterior scattering: sound-soft and sound-hard solves by the direct
// boundary integral formulation, radiating test modes and the disk series.

#include "helmpert/layerpot.hpp"

#include <Eigen/LU>

#include <memory>
#include <optional>

namespace helmpert {

enum class ObstacleKind { soft, hard };

std::string_view to_string(ObstacleKind kind);
ObstacleKind parse_obstacle_kind(std::string_view text);

class IncidentField {
public:
  enum class Kind { plane_wave, cylindrical };

  /// e^{ik d.x}; `direction` must be a unit vector (to 1e-12).
  static IncidentField plane_wave(double k, const Vec2 &direction);
  /// amplitude * Z_|n|(k r) e^{i n theta} with Z = J (regular) or H^(1) (outgoing).
  static IncidentField cylindrical(double k, int order, bool outgoing = false, cplx amplitude = 1.0);

  Kind kind() const { return kind_; }
  double wave_number() const { return k_; }
  const Vec2 &direction() const { return direction_; }
  int order() const { return order_; }
  bool outgoing() const { return outgoing_; }
  cplx amplitude() const { return amplitude_; }

  cplx value(const Vec2 &x) const;
  /// Gradient as (d/dx, d/dy).
  Eigen::Vector2cd gradient(const Vec2 &x) const;

  BoundaryDensity trace(const BoundaryCurve &curve) const;
  BoundaryDensity normal_trace(const BoundaryCurve &curve) const;

private:
  Kind kind_ = Kind::plane_wave;
  double k_ = 1.0;
  Vec2 direction_{1.0, 0.0};
  int order_ = 0;
  bool outgoing_ = false;
  cplx amplitude_{1.0, 0.0};
};

/// Boundary traces of a radiating field on a specific curve.
struct ScatterSolution {
  BoundaryDensity dirichlet_trace;
  BoundaryDensity neumann_trace;
  double k = 0.0;
  BoundaryCurve boundary;
  std::optional<ObstacleKind> kind; // empty for analytic test fields
};

/// Rejects wave numbers at (or numerically near) interior eigenvalues of the disk.
/// Only orders n <= min(40, floor(k rho)) are inspected: J_n and J_n' have no zeros below n.
/// Soft solves need the interior Neumann condition, hard solves the interior Dirichlet one.
void check_disk_resonance(double rho, double k, ObstacleKind kind);

/// Dense LU factorisation of the exterior system for one curve and wave number;
/// reusable across right-hand sides.
class ForwardSolver {
public:
  ForwardSolver(const BoundaryCurve &curve, double k, ObstacleKind kind);

  const BoundaryCurve &curve() const { return curve_; }
  double wave_number() const { return k_; }
  ObstacleKind kind() const { return kind_; }
  const LayerOperators &operators() const { return ops_; }
  double rcond() const { return rcond_; }

  /// Soft: the given data is u^s on the boundary. Hard: it is du^s/dnu.
  ScatterSolution solve_boundary_data(const Eigen::VectorXcd &data) const;
  ScatterSolution solve(const IncidentField &incident) const;

private:
  BoundaryCurve curve_;
  double k_;
  ObstacleKind kind_;
  LayerOperators ops_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
  double rcond_ = 0.0;
};

ScatterSolution solve_soft(const BoundaryCurve &curve, double k, const IncidentField &incident);
ScatterSolution solve_hard(const BoundaryCurve &curve, double k, const IncidentField &incident);

/// Traces of H^(1)_|n|(k r) e^{i n theta}; the origin must be inside the curve.
ScatterSolution radiating_mode(int n, double k, const BoundaryCurve &curve, cplx amplitude = 1.0);
/// H_n(kr) e^{in theta} / |H_n(k rho)|: unit trace amplitude on the circle of radius rho.
ScatterSolution unit_radiating_mode(int n, double k, double rho, const BoundaryCurve &curve);

/// Separation-of-variables solution on a disk centred at the origin.
ScatterSolution disk_series_oracle(const BoundaryCurve &curve, double k, const IncidentField &incident,
                                   ObstacleKind kind);

/// int (du/dnu v - u dv/dnu) dsigma for two fields on the same curve.
cplx reciprocity_residual(const ScatterSolution &u, const ScatterSolution &v);

} // namespace helmpert
