#include "helmpert/layerpot.hpp"

#include "helmpert/errors.hpp"
#include "helmpert/specialfun.hpp"
#include "helmpert/spectral.hpp"
#include "parallel.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <numbers>
#include <ostream>

namespace helmpert {

namespace {

using std::numbers::pi;
constexpr cplx I{0.0, 1.0};

void require_same_curve(std::uint64_t a, std::uint64_t b, const char *what) {
  if (a != b) throw CurveMismatchError(std::string(what) + ": data belongs to a different curve");
}

// Below this k*r the split of Gamma uses the ascending series directly.
constexpr double kSeriesSplitArgument = 2.0;

} // namespace

BoundaryDensity make_density(const BoundaryCurve &curve, Eigen::VectorXcd values) {
  if (values.size() != curve.size()) throw CurveMismatchError("density length differs from node count");
  return {std::move(values), curve.id()};
}

BoundaryDensity pullback(const BoundaryDensity &density, const BoundaryCurve &base) {
  return make_density(base, density.values);
}

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
  case OperatorKind::single: return "single";
  case OperatorKind::double_layer: return "double";
  case OperatorKind::adjoint_double: return "adjoint_double";
  case OperatorKind::hypersingular: return "hypersingular";
  case OperatorKind::first_order_S1: return "first_order_S1";
  case OperatorKind::first_order_K1: return "first_order_K1";
  case OperatorKind::first_order_D1: return "first_order_D1";
  case OperatorKind::first_order_A1: return "first_order_A1";
  }
  return "unknown";
}

BoundaryDensity OperatorMatrix::apply(const BoundaryDensity &density) const {
  require_same_curve(curve_id_, density.curve_id, "OperatorMatrix::apply");
  if (density.size() != entries_.cols()) throw CurveMismatchError("density length differs from operator size");
  return {entries_ * density.values, curve_id_};
}

void OperatorMatrix::dump(std::ostream &os) const {
  static_assert(std::endian::native == std::endian::little, "dump assumes a little-endian host");
  const auto n = static_cast<std::uint64_t>(entries_.rows());
  os.write(reinterpret_cast<const char *>(&n), sizeof n);
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
      const double parts[2] = {entries_(i, j).real(), entries_(i, j).imag()};
      os.write(reinterpret_cast<const char *>(parts), sizeof parts);
    }
  }
}

Eigen::VectorXd kress_log_weights(int n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("kress weights need an even node count >= 4");
  const int half = n / 2;
  Eigen::VectorXd r(n);
  for (int m = 0; m < n; ++m) {
    const double tau = 2.0 * pi * m / n;
    double s = 0.0;
    for (int q = 1; q < half; ++q) s += std::cos(q * tau) / q;
    r(m) = -(4.0 * pi / n) * s - (4.0 * pi / (static_cast<double>(n) * n)) * std::cos(half * tau);
  }
  return r;
}

LayerOperators assemble_layer_operators(const BoundaryCurve &curve, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("wave number must be positive");
  const Eigen::Index n = curve.size();
  const Eigen::VectorXd rw = kress_log_weights(static_cast<int>(n));
  const double h = 2.0 * pi / static_cast<double>(n);
  const auto &x = curve.nodes();
  const auto &nu = curve.normals();
  const auto &jac = curve.jacobian();
  const auto &kappa = curve.curvature();

  Eigen::MatrixXcd s(n, n), kd(n, n), ka(n, n);

  detail::parallel_for_chunks(n, [&](std::ptrdiff_t begin, std::ptrdiff_t end) {
    for (Eigen::Index i = begin; i < end; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index m = (i - j + n) % n;
        const double ji = jac(j);
        if (i == j) {
          const double jj = jac(i);
          const double m1 = jj / (4.0 * pi);
          const cplx m2 = jj * (cplx((std::log(0.5 * k * jj) + specialfun::kEulerGamma) / (2.0 * pi), 0.0) - 0.25 * I);
          s(i, i) = rw(0) * m1 + h * m2;
          kd(i, i) = h * kappa(i) * jj / (4.0 * pi);
          ka(i, i) = kd(i, i);
          continue;
        }
        const double dx = x(i, 0) - x(j, 0), dy = x(i, 1) - x(j, 1);
        const double r = std::hypot(dx, dy);
        const double kr = k * r;
        const double sn = std::sin(0.5 * h * static_cast<double>(i - j));
        const double ln4s = std::log(4.0 * sn * sn);
        const auto c = specialfun::cylinder01(kr);

        const double m1 = c.j0 * ji / (4.0 * pi);
        cplx m2;
        if (kr < kSeriesSplitArgument) {
          const auto split = specialfun::hankel1_log_split(kr);
          m2 = ji * (split.smooth_part + split.log_coefficient * (std::log(kr) - 0.5 * ln4s));
        } else {
          const cplx gamma = 0.25 * cplx(c.y0, -c.j0);
          m2 = gamma * ji - m1 * ln4s;
        }
        s(i, j) = rw(m) * m1 + h * m2;

        // <y - x, nu_y>/r and <x - y, nu_x>/r
        const double py = (-dx * nu(j, 0) - dy * nu(j, 1)) / r;
        const double px = (dx * nu(i, 0) + dy * nu(i, 1)) / r;
        const cplx g1 = 0.25 * I * k * c.h1() * ji;
        const double l1 = -k * c.j1 * ji / (4.0 * pi);
        kd(i, j) = rw(m) * (l1 * py) + h * (g1 * py - l1 * py * ln4s);
        ka(i, j) = rw(m) * (l1 * px) + h * (g1 * px - l1 * px * ln4s);
      }
    }
  });

  const auto id = curve.id();
  return {OperatorMatrix(std::move(s), OperatorKind::single, k, id),
          OperatorMatrix(std::move(kd), OperatorKind::double_layer, k, id),
          OperatorMatrix(std::move(ka), OperatorKind::adjoint_double, k, id)};
}

OperatorMatrix assemble_single(const BoundaryCurve &curve, double k) {
  return std::move(assemble_layer_operators(curve, k).single);
}

OperatorMatrix assemble_double(const BoundaryCurve &curve, double k) {
  return std::move(assemble_layer_operators(curve, k).double_layer);
}

OperatorMatrix assemble_adjoint_double(const BoundaryCurve &curve, double k) {
  return std::move(assemble_layer_operators(curve, k).adjoint_double);
}

Eigen::MatrixXd arclength_derivative_matrix(const BoundaryCurve &curve) {
  const Eigen::MatrixXd d = spectral::differentiation_matrix(static_cast<int>(curve.size()));
  return curve.jacobian().cwiseInverse().asDiagonal() * d;
}

OperatorMatrix assemble_hypersingular(const BoundaryCurve &curve, const OperatorMatrix &single) {
  require_same_curve(curve.id(), single.curve_id(), "assemble_hypersingular");
  const double k = single.wave_number();
  const Eigen::MatrixXcd ds = arclength_derivative_matrix(curve).cast<cplx>();
  const auto &s = single.entries();
  Eigen::MatrixXcd out = ds * (s * ds);
  for (int c = 0; c < 2; ++c) {
    const Eigen::VectorXd nc = curve.normals().col(c);
    out.noalias() += k * k * (nc.asDiagonal() * s * nc.asDiagonal());
  }
  return {std::move(out), OperatorKind::hypersingular, k, curve.id()};
}

OperatorMatrix assemble_hypersingular(const BoundaryCurve &curve, double k) {
  return assemble_hypersingular(curve, assemble_single(curve, k));
}

Eigen::VectorXcd apply_hypersingular(const BoundaryCurve &curve, const OperatorMatrix &single,
                                     const Eigen::VectorXcd &phi) {
  require_same_curve(curve.id(), single.curve_id(), "apply_hypersingular");
  const double k = single.wave_number();
  const auto &s = single.entries();
  Eigen::VectorXcd out = curve.arclength_derivative(Eigen::VectorXcd(s * curve.arclength_derivative(phi)));
  for (int c = 0; c < 2; ++c) {
    const Eigen::VectorXd nc = curve.normals().col(c);
    out += k * k * nc.cwiseProduct(s * nc.cwiseProduct(phi));
  }
  return out;
}

// ---------------------------------------------------------------------------
// off-boundary evaluation

LayerPotentialEvaluator::LayerPotentialEvaluator(const BoundaryCurve &curve, double k,
                                                 double min_spacings)
    : curve_(curve), k_(k), min_distance_(min_spacings * curve.max_spacing()),
      weights_(curve.weights()) {
  if (!(k > 0.0)) throw std::invalid_argument("wave number must be positive");
}

void LayerPotentialEvaluator::check_points(const Points &points) const {
  for (Eigen::Index p = 0; p < points.rows(); ++p) {
    const double d = curve_.distance_to_nodes(points.row(p).transpose());
    if (d < min_distance_) {
      throw EvaluationAccuracyError("evaluation point " + std::to_string(p) + " is " + std::to_string(d) +
                                    " from the boundary; need at least " + std::to_string(min_distance_));
    }
  }
}

template <class Kernel>
Eigen::MatrixXcd LayerPotentialEvaluator::integrate(const Points &points,
                                                    const Eigen::MatrixXcd &densities,
                                                    Kernel kernel) const {
  check_points(points);
  if (densities.rows() != curve_.size()) throw CurveMismatchError("density length differs from node count");
  const Eigen::Index n = curve_.size();
  Eigen::MatrixXcd out(points.rows(), densities.cols());
  detail::parallel_for_chunks(points.rows(), [&](std::ptrdiff_t begin, std::ptrdiff_t end) {
    Eigen::RowVectorXcd row(n);
    for (Eigen::Index p = begin; p < end; ++p) {
      const Vec2 xp = points.row(p).transpose();
      for (Eigen::Index j = 0; j < n; ++j) {
        const Vec2 d = xp - curve_.node(j);
        const double r = d.norm();
        row(j) = kernel(p, j, d, r, specialfun::cylinder01(k_ * r)) * weights_(j);
      }
      out.row(p) = row * densities;
    }
  });
  return out;
}

Eigen::MatrixXcd LayerPotentialEvaluator::single(const Points &points,
                                                 const Eigen::MatrixXcd &densities) const {
  return integrate(points, densities, [](Eigen::Index, Eigen::Index, const Vec2 &, double,
                                         const specialfun::Cylinder01 &c) {
    return 0.25 * cplx(c.y0, -c.j0);
  });
}

Eigen::MatrixXcd LayerPotentialEvaluator::double_layer(const Points &points,
                                                       const Eigen::MatrixXcd &densities) const {
  const double k = k_;
  return integrate(points, densities, [&](Eigen::Index, Eigen::Index j, const Vec2 &d, double r,
                                          const specialfun::Cylinder01 &c) {
    return 0.25 * I * k * c.h1() * (-d.dot(curve_.normal(j)) / r);
  });
}

Eigen::MatrixXcd LayerPotentialEvaluator::single_directional(const Points &points,
                                                             const Points &directions,
                                                             const Eigen::MatrixXcd &densities) const {
  const double k = k_;
  return integrate(points, densities, [&](Eigen::Index p, Eigen::Index, const Vec2 &d, double r,
                                          const specialfun::Cylinder01 &c) {
    return 0.25 * I * k * c.h1() * (d.dot(directions.row(p).transpose()) / r);
  });
}

Eigen::MatrixXcd LayerPotentialEvaluator::double_directional(const Points &points,
                                                             const Points &directions,
                                                             const Eigen::MatrixXcd &densities) const {
  const double k = k_;
  return integrate(points, densities, [&](Eigen::Index p, Eigen::Index j, const Vec2 &d, double r,
                                          const specialfun::Cylinder01 &c) {
    const Vec2 dir = directions.row(p).transpose();
    const Vec2 nu = curve_.normal(j);
    const cplx g1 = c.h1() / r;
    const cplx dg = (k * c.h0() - 2.0 * c.h1() / r) / (r * r);
    return -0.25 * I * k * (dg * d.dot(dir) * d.dot(nu) + g1 * nu.dot(dir));
  });
}

Eigen::VectorXcd eval_field(const BoundaryCurve &curve, double k, const BoundaryDensity &single,
                            const BoundaryDensity &double_density, const Points &points) {
  require_same_curve(curve.id(), single.curve_id, "eval_field");
  require_same_curve(curve.id(), double_density.curve_id, "eval_field");
  for (Eigen::Index p = 0; p < points.rows(); ++p) {
    if (curve.contains(points.row(p).transpose()))
      throw EvaluationAccuracyError("evaluation point " + std::to_string(p) + " lies inside the obstacle");
  }
  const LayerPotentialEvaluator ev(curve, k);
  return ev.single(points, single.values).col(0) - ev.double_layer(points, double_density.values).col(0);
}

// ---------------------------------------------------------------------------
// jump relations

double JumpResiduals::worst() const {
  return std::max({single_continuity, single_trace, double_exterior, double_interior, double_jump,
                   normal_single_exterior, normal_single_interior});
}

cplx extrapolate_to_zero(std::span<const double> xs, std::span<const cplx> ys) {
  if (xs.size() != ys.size() || xs.empty()) throw std::invalid_argument("extrapolation needs matching samples");
  std::vector<cplx> p(ys.begin(), ys.end());
  const std::size_t n = xs.size();
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      p[i] = (xs[i + m] * p[i] - xs[i] * p[i + 1]) / (xs[i + m] - xs[i]);
    }
  }
  return p[0];
}

std::vector<JumpResiduals> jump_check(const BoundaryCurve &curve, double k,
                                      std::span<const BoundaryDensity> densities,
                                      const JumpCheckOptions &options) {
  const Eigen::Index n = curve.size();
  const auto nd = static_cast<Eigen::Index>(densities.size());
  if (nd == 0) return {};
  if (options.offsets < 2) throw std::invalid_argument("jump_check needs at least two offsets");

  Eigen::MatrixXcd phi(n, nd);
  for (Eigen::Index c = 0; c < nd; ++c) {
    const auto &d = densities[static_cast<std::size_t>(c)];
    require_same_curve(curve.id(), d.curve_id, "jump_check");
    phi.col(c) = d.values;
  }

  const int fine_n = static_cast<int>(n * ((options.fine_nodes + n - 1) / n));
  const BoundaryCurve fine = curve.resampled(fine_n);
  Eigen::MatrixXcd fine_phi(fine_n, nd);
  for (Eigen::Index c = 0; c < nd; ++c) fine_phi.col(c) = spectral::resample(Eigen::VectorXcd(phi.col(c)), fine_n);

  const double delta0 = options.offset_spacings * fine.max_spacing();
  const int no = options.offsets;
  std::vector<double> deltas(static_cast<std::size_t>(no));
  for (int m = 0; m < no; ++m) deltas[static_cast<std::size_t>(m)] = delta0 * (m + 1);

  // targets ordered (side, offset, node)
  const Eigen::Index nt = 2 * no * n;
  Points targets(nt, 2), dirs(nt, 2);
  for (int side = 0; side < 2; ++side) {
    const double sign = side == 0 ? 1.0 : -1.0;
    for (int m = 0; m < no; ++m) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index row = (side * no + m) * n + i;
        targets.row(row) = curve.nodes().row(i) + sign * deltas[static_cast<std::size_t>(m)] * curve.normals().row(i);
        dirs.row(row) = curve.normals().row(i);
      }
    }
  }

  const LayerPotentialEvaluator ev(fine, k, 0.9 * options.offset_spacings);
  const Eigen::MatrixXcd sv = ev.single(targets, fine_phi);
  const Eigen::MatrixXcd dv = ev.double_layer(targets, fine_phi);
  const Eigen::MatrixXcd gv = ev.single_directional(targets, dirs, fine_phi);

  auto limit = [&](const Eigen::MatrixXcd &vals, int side, Eigen::Index i, Eigen::Index c) {
    std::vector<cplx> ys(static_cast<std::size_t>(no));
    for (int m = 0; m < no; ++m) ys[static_cast<std::size_t>(m)] = vals((side * no + m) * n + i, c);
    return extrapolate_to_zero(deltas, ys);
  };

  const auto ops = assemble_layer_operators(curve, k);
  const Eigen::MatrixXcd s_phi = ops.single.entries() * phi;
  const Eigen::MatrixXcd k_phi = ops.double_layer.entries() * phi;
  const Eigen::MatrixXcd kt_phi = ops.adjoint_double.entries() * phi;

  std::vector<JumpResiduals> out(static_cast<std::size_t>(nd));
  for (Eigen::Index c = 0; c < nd; ++c) {
    auto &res = out[static_cast<std::size_t>(c)];
    for (Eigen::Index i = 0; i < n; ++i) {
      const cplx sp = limit(sv, 0, i, c), sm = limit(sv, 1, i, c);
      const cplx dp = limit(dv, 0, i, c), dm = limit(dv, 1, i, c);
      const cplx gp = limit(gv, 0, i, c), gm = limit(gv, 1, i, c);
      const cplx f = phi(i, c);
      res.single_continuity = std::max(res.single_continuity, std::abs(sp - sm));
      res.single_trace = std::max({res.single_trace, std::abs(sp - s_phi(i, c)), std::abs(sm - s_phi(i, c))});
      res.double_exterior = std::max(res.double_exterior, std::abs(dp - (-0.5 * f + k_phi(i, c))));
      res.double_interior = std::max(res.double_interior, std::abs(dm - (0.5 * f + k_phi(i, c))));
      res.double_jump = std::max(res.double_jump, std::abs((dm - dp) - f));
      res.normal_single_exterior = std::max(res.normal_single_exterior, std::abs(gp - (0.5 * f + kt_phi(i, c))));
      res.normal_single_interior = std::max(res.normal_single_interior, std::abs(gm - (-0.5 * f + kt_phi(i, c))));
    }
  }
  return out;
}

JumpResiduals jump_check(const BoundaryCurve &curve, double k, const BoundaryDensity &density,
                         const JumpCheckOptions &options) {
  return jump_check(curve, k, std::span<const BoundaryDensity>(&density, 1), options)[0];
}

} // namespace helmpert
