#include "helmpert/forward.hpp"

#include "helmpert/errors.hpp"
#include "helmpert/specialfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace helmpert {

namespace {

using namespace specialfun;
constexpr cplx I{0.0, 1.0};
constexpr double kRcondFloor = 1e-8;
constexpr double kResonanceFloor = 1e-6;

cplx ipow(int n) {
  static constexpr cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((n % 4) + 4) % 4];
}

struct Radial {
  cplx f, df; // Z(kr) and d/dr Z(kr)
};

Radial radial_profile(int m, double k, double r, bool outgoing) {
  if (outgoing) return {hankel1(m, k * r), k * hankel1_derivative(m, k * r)};
  return {bessel_j(m, k * r), k * bessel_j_derivative(m, k * r)};
}

} // namespace

std::string_view to_string(ObstacleKind kind) { return kind == ObstacleKind::soft ? "soft" : "hard"; }

ObstacleKind parse_obstacle_kind(std::string_view text) {
  if (text == "soft") return ObstacleKind::soft;
  if (text == "hard") return ObstacleKind::hard;
  throw std::invalid_argument("obstacle kind must be 'soft' or 'hard', got '" + std::string(text) + "'");
}

IncidentField IncidentField::plane_wave(double k, const Vec2 &direction) {
  if (!(k > 0.0)) throw std::invalid_argument("wave number must be positive");
  if (std::abs(direction.norm() - 1.0) > 1e-12) throw std::invalid_argument("plane-wave direction must be a unit vector");
  IncidentField f;
  f.kind_ = Kind::plane_wave;
  f.k_ = k;
  f.direction_ = direction;
  return f;
}

IncidentField IncidentField::cylindrical(double k, int order, bool outgoing, cplx amplitude) {
  if (!(k > 0.0)) throw std::invalid_argument("wave number must be positive");
  if (std::abs(order) > kMaxOrder) throw std::invalid_argument("cylindrical order out of range");
  IncidentField f;
  f.kind_ = Kind::cylindrical;
  f.k_ = k;
  f.order_ = order;
  f.outgoing_ = outgoing;
  f.amplitude_ = amplitude;
  return f;
}

cplx IncidentField::value(const Vec2 &x) const {
  if (kind_ == Kind::plane_wave) return std::polar(1.0, k_ * direction_.dot(x));
  const double r = x.norm();
  if (r == 0.0) {
    if (outgoing_) throw std::domain_error("outgoing cylindrical wave is singular at the origin");
    return order_ == 0 ? amplitude_ : cplx(0.0);
  }
  const double th = std::atan2(x.y(), x.x());
  return amplitude_ * radial_profile(std::abs(order_), k_, r, outgoing_).f * std::polar(1.0, order_ * th);
}

Eigen::Vector2cd IncidentField::gradient(const Vec2 &x) const {
  if (kind_ == Kind::plane_wave) {
    const cplx v = I * k_ * std::polar(1.0, k_ * direction_.dot(x));
    return Eigen::Vector2cd(v * direction_.x(), v * direction_.y());
  }
  const double r = x.norm();
  if (r == 0.0) {
    if (outgoing_) throw std::domain_error("outgoing cylindrical wave is singular at the origin");
    if (std::abs(order_) != 1) return Eigen::Vector2cd::Zero();
    const cplx s = order_ > 0 ? I : -I;
    return amplitude_ * 0.5 * k_ * Eigen::Vector2cd(1.0, s);
  }
  const double th = std::atan2(x.y(), x.x());
  const auto rad = radial_profile(std::abs(order_), k_, r, outgoing_);
  const cplx e = amplitude_ * std::polar(1.0, order_ * th);
  const cplx dr = rad.df * e;
  const cplx dth = I * static_cast<double>(order_) / r * rad.f * e;
  const double c = std::cos(th), s = std::sin(th);
  return Eigen::Vector2cd(dr * c - dth * s, dr * s + dth * c);
}

BoundaryDensity IncidentField::trace(const BoundaryCurve &curve) const {
  Eigen::VectorXcd v(curve.size());
  for (Eigen::Index j = 0; j < curve.size(); ++j) v(j) = value(curve.node(j));
  return make_density(curve, std::move(v));
}

BoundaryDensity IncidentField::normal_trace(const BoundaryCurve &curve) const {
  Eigen::VectorXcd v(curve.size());
  for (Eigen::Index j = 0; j < curve.size(); ++j) {
    const Eigen::Vector2cd g = gradient(curve.node(j));
    v(j) = g(0) * curve.normals()(j, 0) + g(1) * curve.normals()(j, 1);
  }
  return make_density(curve, std::move(v));
}

void check_disk_resonance(double rho, double k, ObstacleKind kind) {
  const double x = k * rho;
  const int top = std::min(40, static_cast<int>(std::floor(x)));
  const auto table = CylinderFunctionTable::make(std::max(top, 1), x);
  for (int n = 0; n <= top; ++n) {
    const double v = kind == ObstacleKind::soft ? table.j_derivative(n) : table.values_j[n];
    if (std::abs(v) <= kResonanceFloor) {
      throw ResonanceError("k = " + std::to_string(k) + " is an interior " +
                           (kind == ObstacleKind::soft ? "Neumann" : "Dirichlet") +
                           " eigenvalue of the disk of radius " + std::to_string(rho) + " (order " +
                           std::to_string(n) + ")");
    }
  }
}

ForwardSolver::ForwardSolver(const BoundaryCurve &curve, double k, ObstacleKind kind)
    : curve_(curve), k_(k), kind_(kind), ops_(assemble_layer_operators(curve, k)) {
  if (const auto rho = curve.disk_radius()) check_disk_resonance(*rho, k, kind);
  const Eigen::Index n = curve.size();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  if (kind == ObstacleKind::soft) {
    lu_.compute(-0.5 * id + ops_.adjoint_double.entries());
  } else {
    lu_.compute(0.5 * id + ops_.double_layer.entries());
  }
  rcond_ = lu_.rcond();
  if (!(rcond_ > kRcondFloor)) {
    throw ResonanceError("boundary integral system is near singular at k = " + std::to_string(k) +
                         " (rcond " + std::to_string(rcond_) + ")");
  }
}

ScatterSolution ForwardSolver::solve_boundary_data(const Eigen::VectorXcd &data) const {
  if (data.size() != curve_.size()) throw CurveMismatchError("boundary data length differs from node count");
  ScatterSolution out{make_density(curve_, data), make_density(curve_, data), k_, curve_, kind_};
  if (kind_ == ObstacleKind::soft) {
    const Eigen::VectorXcd rhs = apply_hypersingular(curve_, ops_.single, data);
    out.neumann_trace.values = lu_.solve(rhs);
  } else {
    const Eigen::VectorXcd rhs = ops_.single.apply(data);
    out.dirichlet_trace.values = lu_.solve(rhs);
  }
  return out;
}

ScatterSolution ForwardSolver::solve(const IncidentField &incident) const {
  if (std::abs(incident.wave_number() - k_) > 1e-14 * k_)
    throw std::invalid_argument("incident field and solver use different wave numbers");
  if (kind_ == ObstacleKind::soft) return solve_boundary_data(-incident.trace(curve_).values);
  return solve_boundary_data(-incident.normal_trace(curve_).values);
}

ScatterSolution solve_soft(const BoundaryCurve &curve, double k, const IncidentField &incident) {
  return ForwardSolver(curve, k, ObstacleKind::soft).solve(incident);
}

ScatterSolution solve_hard(const BoundaryCurve &curve, double k, const IncidentField &incident) {
  return ForwardSolver(curve, k, ObstacleKind::hard).solve(incident);
}

ScatterSolution radiating_mode(int n, double k, const BoundaryCurve &curve, cplx amplitude) {
  if (!curve.contains(Vec2::Zero()))
    throw std::invalid_argument("radiating test mode needs the origin inside the curve");
  const auto mode = IncidentField::cylindrical(k, n, true, amplitude);
  return {mode.trace(curve), mode.normal_trace(curve), k, curve, std::nullopt};
}

ScatterSolution unit_radiating_mode(int n, double k, double rho, const BoundaryCurve &curve) {
  return radiating_mode(n, k, curve, 1.0 / std::abs(hankel1(std::abs(n), k * rho)));
}

ScatterSolution disk_series_oracle(const BoundaryCurve &curve, double k, const IncidentField &incident,
                                   ObstacleKind kind) {
  const auto rho_opt = curve.disk_radius();
  if (!rho_opt) throw UnsupportedGeometryError("series oracle is only available for disks");
  const double rho = *rho_opt;
  const double x = k * rho;
  const Eigen::Index size = curve.size();

  if (incident.kind() == IncidentField::Kind::cylindrical && incident.outgoing()) {
    // already radiating: the scattered field cancels it
    auto u = incident.trace(curve), du = incident.normal_trace(curve);
    u.values = -u.values;
    du.values = -du.values;
    return {u, du, k, curve, kind};
  }

  int top = std::max(20, static_cast<int>(std::ceil(6.0 * x)));
  while (top < kMaxOrder && std::abs(bessel_j(top, x)) > 1e-16) ++top;
  const auto t = CylinderFunctionTable::make(top, x);

  // scattered coefficient of H_|n|(k r) e^{i n theta} for incident coefficient a of J_|n|(k r) e^{i n theta}
  auto scatter = [&](int n, cplx a) {
    const int m = std::abs(n);
    if (kind == ObstacleKind::soft) return -a * t.values_j[m] / t.values_h1[m];
    return -a * t.j_derivative(m) / t.h1_derivative(m);
  };

  std::vector<std::pair<int, cplx>> terms;
  if (incident.kind() == IncidentField::Kind::cylindrical) {
    terms.emplace_back(incident.order(), scatter(incident.order(), incident.amplitude()));
  } else {
    const double thd = std::atan2(incident.direction().y(), incident.direction().x());
    for (int n = -top; n <= top; ++n) {
      terms.emplace_back(n, scatter(n, ipow(std::abs(n)) * std::polar(1.0, -n * thd)));
    }
  }

  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(size), du = Eigen::VectorXcd::Zero(size);
  for (Eigen::Index j = 0; j < size; ++j) {
    const double th = std::atan2(curve.nodes()(j, 1), curve.nodes()(j, 0));
    for (const auto &[n, b] : terms) {
      const int m = std::abs(n);
      const cplx e = b * std::polar(1.0, n * th);
      u(j) += e * t.values_h1[m];
      du(j) += e * k * t.h1_derivative(m);
    }
  }
  return {make_density(curve, std::move(u)), make_density(curve, std::move(du)), k, curve, kind};
}

cplx reciprocity_residual(const ScatterSolution &u, const ScatterSolution &v) {
  if (u.boundary.id() != v.boundary.id() || u.dirichlet_trace.curve_id != v.dirichlet_trace.curve_id)
    throw CurveMismatchError("reciprocity needs both fields on the same curve");
  const Eigen::VectorXd w = u.boundary.weights();
  const Eigen::VectorXcd integrand = u.neumann_trace.values.cwiseProduct(v.dirichlet_trace.values) -
                                     u.dirichlet_trace.values.cwiseProduct(v.neumann_trace.values);
  return (integrand.array() * w.array().cast<cplx>()).sum();
}

} // namespace helmpert
