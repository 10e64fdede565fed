#include "helmpert/perturb.hpp"

#include "helmpert/errors.hpp"

namespace helmpert {

namespace {

void check_profile(const BoundaryCurve &curve, const PerturbationProfile &profile) {
  if (profile.size() != curve.size())
    throw CurveMismatchError("profile sampled on a different grid than the curve");
}

double l2_norm(const BoundaryCurve &curve, const Eigen::VectorXcd &v) {
  return std::sqrt((v.cwiseAbs2().array() * curve.weights().array()).sum());
}

} // namespace

FirstOrderOperators assemble_first_order(const BoundaryCurve &curve, const LayerOperators &base,
                                         const OperatorMatrix &hypersingular,
                                         const PerturbationProfile &profile, TraceSide side) {
  check_profile(curve, profile);
  const auto id = curve.id();
  if (base.single.curve_id() != id || hypersingular.curve_id() != id)
    throw CurveMismatchError("base operators belong to another curve");
  const double k = base.single.wave_number();
  const double k2 = k * k;
  const Eigen::Index n = curve.size();

  const Eigen::VectorXcd h = profile.nodal_values().cast<cplx>();
  const Eigen::VectorXcd kh = profile.nodal_values().cwiseProduct(curve.curvature()).cast<cplx>();
  const Eigen::MatrixXcd ds = arclength_derivative_matrix(curve).cast<cplx>();
  const Eigen::MatrixXcd hds = h.asDiagonal() * ds;
  const Eigen::MatrixXcd w2 = ds * hds; // phi -> (h phi_s)_s

  const double sgn = side == TraceSide::exterior ? 1.0 : -1.0;
  const Eigen::MatrixXcd id_half = 0.5 * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd kt = sgn * id_half + base.adjoint_double.entries(); // dS/dnu|side
  const Eigen::MatrixXcd dd = -sgn * id_half + base.double_layer.entries();  // D|side
  const auto &s = base.single.entries();
  const auto &hyp = hypersingular.entries();

  Eigen::MatrixXcd s1 = s * kh.asDiagonal();
  s1 += h.asDiagonal() * kt;
  s1 += dd * h.asDiagonal();

  Eigen::MatrixXcd k1 = -(kh.asDiagonal() * kt);
  k1 += kt * kh.asDiagonal();
  k1 += hyp * h.asDiagonal();
  k1 -= ds * (hds * s);
  k1 -= k2 * (h.asDiagonal() * s);

  Eigen::MatrixXcd d1 = -k2 * (s * h.asDiagonal());
  d1 += h.asDiagonal() * hyp;
  d1 -= s * w2;

  Eigen::MatrixXcd a1 = -(kh.asDiagonal() * hyp);
  a1 -= k2 * (kt * h.asDiagonal());
  a1 -= k2 * (h.asDiagonal() * dd);
  a1 -= kt * w2;
  a1 -= ds * (hds * dd);

  return {OperatorMatrix(std::move(s1), OperatorKind::first_order_S1, k, id),
          OperatorMatrix(std::move(k1), OperatorKind::first_order_K1, k, id),
          OperatorMatrix(std::move(d1), OperatorKind::first_order_D1, k, id),
          OperatorMatrix(std::move(a1), OperatorKind::first_order_A1, k, id)};
}

namespace {

FirstOrderOperators first_order(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                                TraceSide side) {
  check_profile(curve, profile);
  const auto base = assemble_layer_operators(curve, k);
  return assemble_first_order(curve, base, assemble_hypersingular(curve, base.single), profile, side);
}

} // namespace

OperatorMatrix assemble_S1(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                           TraceSide side) {
  check_profile(curve, profile);
  return first_order(curve, k, profile, side).s1;
}

OperatorMatrix assemble_K1(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                           TraceSide side) {
  return first_order(curve, k, profile, side).k1;
}

OperatorMatrix assemble_D1(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                           TraceSide side) {
  return first_order(curve, k, profile, side).d1;
}

OperatorMatrix assemble_A1(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                           TraceSide side) {
  return first_order(curve, k, profile, side).a1;
}

ExpansionDefects expansion_defects(const BoundaryCurve &curve, double k,
                                   const PerturbationProfile &profile, const Eigen::VectorXcd &phi) {
  check_profile(curve, profile);
  const double eps = profile.epsilon();
  const auto base = assemble_layer_operators(curve, k);
  const auto hyp = assemble_hypersingular(curve, base.single);
  const auto first = assemble_first_order(curve, base, hyp, profile);

  const BoundaryCurve moved = perturb_boundary(curve, profile);
  const auto pert = assemble_layer_operators(moved, k);

  ExpansionDefects d;
  d.single = l2_norm(curve, pert.single.apply(phi) - base.single.apply(phi) - eps * first.s1.apply(phi));
  // the +-1/2 phi jump terms are identical on both curves and drop out
  d.normal_single = l2_norm(curve, pert.adjoint_double.apply(phi) - base.adjoint_double.apply(phi) -
                                       eps * first.k1.apply(phi));
  d.double_layer = l2_norm(curve, pert.double_layer.apply(phi) - base.double_layer.apply(phi) -
                                      eps * first.d1.apply(phi));
  d.normal_double = l2_norm(curve, apply_hypersingular(moved, pert.single, phi) - hyp.apply(phi) -
                                       eps * first.a1.apply(phi));
  return d;
}

} // namespace helmpert
