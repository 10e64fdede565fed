#include "helmpert/dno_ndo.hpp"

#include "helmpert/errors.hpp"

#include <cmath>
#include <future>
#include <ostream>
#include <stdexcept>

namespace helmpert {

namespace {

ObstacleKind solver_kind(MapKind kind) { return kind == MapKind::dno ? ObstacleKind::soft : ObstacleKind::hard; }

void require_on(const BoundaryDensity &d, const BoundaryCurve &curve, const char *what) {
  if (d.curve_id != curve.id() || d.size() != curve.size())
    throw CurveMismatchError(std::string(what) + ": density does not live on this curve");
}

// radiating field with the given data, as traces
ScatterSolution field_from(const BoundaryCurve &curve, double k, MapKind kind, const Eigen::VectorXcd &data) {
  return ForwardSolver(curve, k, solver_kind(kind)).solve_boundary_data(data);
}

BoundaryMapSample apply_map(const BoundaryCurve &curve, double k, MapKind kind, const BoundaryDensity &in) {
  require_on(in, curve, to_string(kind).data());
  const auto u = field_from(curve, k, kind, in.values);
  const auto &out = kind == MapKind::dno ? u.neumann_trace : u.dirichlet_trace;
  return {in, out, kind, false, std::nullopt};
}

BoundaryMapSample apply_perturbed(const BoundaryCurve &curve, double k, MapKind kind,
                                  const PerturbationProfile &profile, const BoundaryDensity &in) {
  require_on(in, curve, to_string(kind).data());
  if (profile.is_zero() || profile.epsilon() == 0.0) {
    auto s = apply_map(curve, k, kind, in);
    s.perturbed = true;
    s.profile = profile;
    return s;
  }
  const auto moved = perturb_boundary(curve, profile);
  const auto u = field_from(moved, k, kind, in.values);
  const auto &out = kind == MapKind::dno ? u.neumann_trace : u.dirichlet_trace;
  return {in, pullback(out, curve), kind, true, profile};
}

double l2_norm(const Eigen::VectorXcd &v, const BoundaryCurve &curve) {
  return std::sqrt((v.cwiseAbs2().array() * curve.weights().array()).sum());
}

Eigen::VectorXcd first_order(const BoundaryCurve &curve, double k, MapKind kind,
                             const PerturbationProfile &profile, const BoundaryDensity &in) {
  require_on(in, curve, to_string(kind).data());
  const ForwardSolver solver(curve, k, solver_kind(kind));
  const auto &ops = solver.operators();
  const auto hyper = assemble_hypersingular(curve, ops.single);
  const auto unit = profile.with_epsilon(1.0);
  const auto first = assemble_first_order(curve, ops, hyper, unit);
  const Eigen::Index n = curve.size();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const auto u = solver.solve_boundary_data(in.values);
  if (kind == MapKind::dno) {
    const Eigen::VectorXcd rhs = first.a1.apply(in.values) - first.k1.apply(u.neumann_trace.values);
    return (-0.5 * id + ops.adjoint_double.entries()).partialPivLu().solve(rhs);
  }
  const Eigen::VectorXcd rhs = first.s1.apply(in.values) - first.d1.apply(u.dirichlet_trace.values);
  return (0.5 * id + ops.double_layer.entries()).partialPivLu().solve(rhs);
}

void check_epsilons(const std::vector<double> &eps) {
  if (eps.size() < 3) throw std::invalid_argument("need at least three eps values");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0)) throw std::invalid_argument("eps values must be positive");
    if (i > 0 && !(eps[i] < eps[i - 1])) throw std::invalid_argument("eps values must decrease");
  }
}

} // namespace

std::string_view to_string(MapKind kind) { return kind == MapKind::dno ? "dno" : "ndo"; }

MapKind parse_map_kind(std::string_view text) {
  if (text == "dno") return MapKind::dno;
  if (text == "ndo") return MapKind::ndo;
  throw std::invalid_argument("map kind must be 'dno' or 'ndo', got '" + std::string(text) + "'");
}

BoundaryMapSample dno(const BoundaryCurve &curve, double k, const BoundaryDensity &f) {
  return apply_map(curve, k, MapKind::dno, f);
}

BoundaryMapSample ndo(const BoundaryCurve &curve, double k, const BoundaryDensity &g) {
  return apply_map(curve, k, MapKind::ndo, g);
}

BoundaryMapSample dno_perturbed(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                                const BoundaryDensity &f) {
  return apply_perturbed(curve, k, MapKind::dno, profile, f);
}

BoundaryMapSample ndo_perturbed(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                                const BoundaryDensity &g) {
  return apply_perturbed(curve, k, MapKind::ndo, profile, g);
}

Eigen::VectorXcd dno_first_order(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                                 const BoundaryDensity &f) {
  return first_order(curve, k, MapKind::dno, profile, f);
}

Eigen::VectorXcd ndo_first_order(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                                 const BoundaryDensity &g) {
  return first_order(curve, k, MapKind::ndo, profile, g);
}

MapDefectStudy map_defect_study(const BoundaryCurve &curve, double k, MapKind kind,
                                const PerturbationProfile &profile, const BoundaryDensity &data,
                                const std::vector<double> &epsilons) {
  check_epsilons(epsilons);
  const Eigen::VectorXcd base = apply_map(curve, k, kind, data).output.values;
  const Eigen::VectorXcd corr = first_order(curve, k, kind, profile, data);

  std::vector<std::future<Eigen::VectorXcd>> jobs;
  for (double e : epsilons)
    jobs.push_back(std::async(std::launch::async, [&, e] {
      return apply_perturbed(curve, k, kind, profile.with_epsilon(e), data).output.values;
    }));

  MapDefectStudy st;
  st.map_kind = kind;
  std::vector<double> z, f;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    const Eigen::VectorXcd diff = jobs[i].get() - base;
    MapDefectRow row{epsilons[i], l2_norm(diff, curve), l2_norm(diff - epsilons[i] * corr, curve)};
    z.push_back(row.zeroth);
    f.push_back(row.first);
    st.rows.push_back(row);
  }
  st.slope_zeroth = fit_log_slope(epsilons, z);
  st.slope_first = fit_log_slope(epsilons, f);
  return st;
}

void write_defect_csv(std::ostream &os, const MapDefectStudy &study, const std::string &stamp) {
  os << "# " << stamp << '\n';
  os << "epsilon,defect_zeroth,defect_first,slope_zeroth,slope_first\n";
  for (const auto &r : study.rows)
    os << format_number(r.epsilon) << ',' << format_number(r.zeroth) << ',' << format_number(r.first) << ','
       << format_number(study.slope_zeroth) << ',' << format_number(study.slope_first) << '\n';
}

BracketResult dno_bracket_leading(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                                  const BoundaryDensity &f, const BoundaryDensity &g) {
  require_on(g, curve, "dno");
  const auto uf = field_from(curve, k, MapKind::dno, f.values);
  const auto ug = field_from(curve, k, MapKind::dno, g.values);
  const Eigen::VectorXcd neps = dno_perturbed(curve, k, profile, f).output.values;
  const Eigen::VectorXd w = curve.weights();
  const cplx lhs = (w.cast<cplx>().array() * (neps.array() * g.values.array() -
                                              f.values.array() * ug.neumann_trace.values.array())).sum();
  const cplx lead = leading_term(uf, ug, profile.with_epsilon(1.0), curve);
  const double eps = profile.epsilon();
  return {lhs, eps, lead, lhs - eps * lead};
}

BracketResult ndo_bracket_leading(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                                  const BoundaryDensity &f, const BoundaryDensity &g) {
  require_on(g, curve, "ndo");
  const auto vf = field_from(curve, k, MapKind::ndo, f.values);
  const auto vg = field_from(curve, k, MapKind::ndo, g.values);
  const Eigen::VectorXcd leps = ndo_perturbed(curve, k, profile, f).output.values;
  const Eigen::VectorXd w = curve.weights();
  const cplx lhs = (w.cast<cplx>().array() * (f.values.array() * vg.dirichlet_trace.values.array() -
                                              leps.array() * g.values.array())).sum();
  const cplx lead = leading_term(vf, vg, profile.with_epsilon(1.0), curve);
  const double eps = profile.epsilon();
  return {lhs, eps, lead, lhs - eps * lead};
}

OrderStudy map_bracket_study(const BoundaryCurve &curve, double k, MapKind kind, const PerturbationProfile &profile,
                             const BoundaryDensity &f, const BoundaryDensity &g, const std::vector<double> &epsilons) {
  check_epsilons(epsilons);
  std::vector<std::future<BracketResult>> jobs;
  for (double e : epsilons)
    jobs.push_back(std::async(std::launch::async, [&, e] {
      const auto p = profile.with_epsilon(e);
      return kind == MapKind::dno ? dno_bracket_leading(curve, k, p, f, g) : ndo_bracket_leading(curve, k, p, f, g);
    }));
  OrderStudy st;
  std::vector<double> res;
  for (auto &j : jobs) {
    st.rows.push_back(j.get());
    res.push_back(std::abs(st.rows.back().residual));
  }
  st.slope = fit_log_slope(epsilons, res);
  st.floor_contaminated = non_monotone(res);
  return st;
}

} // namespace helmpert
