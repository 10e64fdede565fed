#include "helmpert/errors.hpp"
#include "helmpert/forward.hpp"
#include "helmpert/specialfun.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace helmpert;
using std::numbers::pi;

namespace {

double max_diff(const BoundaryDensity &a, const BoundaryDensity &b) {
  return (a.values - b.values).cwiseAbs().maxCoeff();
}

double solve_error(ObstacleKind kind, double k, int n) {
  const auto disk = make_disk(1.0, n);
  const auto inc = IncidentField::plane_wave(k, Vec2(1.0, 0.0));
  const auto sol = ForwardSolver(disk, k, kind).solve(inc);
  const auto ref = disk_series_oracle(disk, k, inc, kind);
  return std::max(max_diff(sol.dirichlet_trace, ref.dirichlet_trace), max_diff(sol.neumann_trace, ref.neumann_trace));
}

} // namespace

TEST_CASE("incident fields") {
  const auto pw = IncidentField::plane_wave(2.0, Vec2(0.6, 0.8));
  CHECK(std::abs(pw.value(Vec2(1.0, 1.0)) - std::polar(1.0, 2.0 * 1.4)) < 1e-14);
  CHECK_THROWS(IncidentField::plane_wave(1.0, Vec2(1.0, 1.0)));
  // gradient against central differences
  for (const auto &f : {IncidentField::cylindrical(1.3, 3, true), IncidentField::cylindrical(1.3, -2, false, cplx(0.5, 1.0)), pw}) {
    const Vec2 x(0.7, -0.4);
    const double h = 1e-6;
    const auto g = f.gradient(x);
    const cplx gx = (f.value(x + Vec2(h, 0)) - f.value(x - Vec2(h, 0))) / (2 * h);
    const cplx gy = (f.value(x + Vec2(0, h)) - f.value(x - Vec2(0, h))) / (2 * h);
    CHECK(std::abs(g(0) - gx) < 1e-7);
    CHECK(std::abs(g(1) - gy) < 1e-7);
  }
}

TEST_CASE("soft and hard disk against the series") {
  for (double k : {0.5, 1.0, 2.0}) {
    CHECK(solve_error(ObstacleKind::soft, k, 256) < 1e-6);
    CHECK(solve_error(ObstacleKind::hard, k, 256) < 1e-6);
  }
  const auto disk = make_disk(1.0, 256);
  const auto inc = IncidentField::plane_wave(1.0, Vec2(1.0, 0.0));
  const auto soft = solve_soft(disk, 1.0, inc);
  CHECK((soft.dirichlet_trace.values + inc.trace(disk).values).cwiseAbs().maxCoeff() < 1e-10);
  const auto hard = solve_hard(disk, 1.0, inc);
  CHECK((hard.neumann_trace.values + inc.normal_trace(disk).values).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("doubling N reduces the error") {
  for (auto kind : {ObstacleKind::soft, ObstacleKind::hard}) {
    for (double k : {0.5, 1.0, 2.0}) {
      const double coarse = solve_error(kind, k, 16);
      const double fine = solve_error(kind, k, 32);
      CHECK(coarse / fine >= 100.0);
    }
  }
}

TEST_CASE("series oracle properties") {
  const auto disk = make_disk(1.0, 128);
  const auto inc = IncidentField::plane_wave(1.0, Vec2(0.0, 1.0));
  const auto soft = disk_series_oracle(disk, 1.0, inc, ObstacleKind::soft);
  CHECK((soft.dirichlet_trace.values + inc.trace(disk).values).cwiseAbs().maxCoeff() < 1e-12);
  const auto hard = disk_series_oracle(disk, 1.0, inc, ObstacleKind::hard);
  CHECK((hard.neumann_trace.values + inc.normal_trace(disk).values).cwiseAbs().maxCoeff() < 1e-12);
  const Eigen::VectorXd w = disk.weights();
  for (const auto *s : {&soft, &hard}) {
    const cplx flux = (s->dirichlet_trace.values.conjugate().cwiseProduct(s->neumann_trace.values).array() *
                       w.array().cast<cplx>()).sum();
    CHECK(flux.imag() > 0.0);
  }
  const auto star = make_star_curve({{0, 1.0}, {2, 0.1}, {-2, 0.1}}, 64);
  CHECK_THROWS_AS(disk_series_oracle(star, 1.0, inc, ObstacleKind::soft), UnsupportedGeometryError);
}

TEST_CASE("rotating the incident direction rotates the traces") {
  const int n = 128, shift = 8;
  const auto disk = make_disk(1.0, n);
  const ForwardSolver solver(disk, 1.0, ObstacleKind::soft);
  const double a = 2 * pi * shift / n;
  const auto s0 = solver.solve(IncidentField::plane_wave(1.0, Vec2(1.0, 0.0)));
  const auto s1 = solver.solve(IncidentField::plane_wave(1.0, Vec2(std::cos(a), std::sin(a))));
  double worst = 0.0;
  for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(s1.neumann_trace.values((j + shift) % n) - s0.neumann_trace.values(j)));
  CHECK(worst < 1e-10);
}

TEST_CASE("reciprocity against radiating modes") {
  const auto star = make_star_curve({{0, 1.0}, {3, 0.08}, {-3, 0.08}}, 256);
  const auto inc = IncidentField::plane_wave(1.0, Vec2(0.6, -0.8));
  for (auto kind : {ObstacleKind::soft, ObstacleKind::hard}) {
    const auto sol = ForwardSolver(star, 1.0, kind).solve(inc);
    for (int m : {0, 1, 3, -2, 5}) {
      CHECK(std::abs(reciprocity_residual(sol, radiating_mode(m, 1.0, star))) < 1e-6);
    }
  }
}

TEST_CASE("radiating modes") {
  const auto disk = make_disk(1.0, 64);
  const auto u0 = radiating_mode(0, 1.0, disk);
  CHECK((u0.dirichlet_trace.values.array() - specialfun::hankel1(0, 1.0)).abs().maxCoeff() < 1e-14);
  const auto u3 = radiating_mode(3, 1.0, disk);
  for (Eigen::Index j = 0; j < 64; ++j) {
    const cplx e = std::polar(1.0, 3 * 2 * pi * j / 64);
    CHECK(std::abs(u3.neumann_trace.values(j) - specialfun::hankel1_derivative(3, 1.0) * e) < 1e-12);
  }
  CHECK(std::abs(reciprocity_residual(radiating_mode(2, 1.0, disk), radiating_mode(5, 1.0, disk))) < 1e-8);
  const auto shifted = BoundaryCurve::from_nodes(make_disk(0.5, 64).nodes().rowwise() + Eigen::RowVector2d(3.0, 0.0));
  CHECK_THROWS_AS(radiating_mode(1, 1.0, shifted), std::invalid_argument);
}

TEST_CASE("uniform inflation reproduces the larger disk") {
  const auto big = make_disk(1.1, 128);
  const auto grown = perturb_boundary(make_disk(1.0, 128), PerturbationProfile::cosine(1.0, 0, 0.1, 128));
  const auto inc = IncidentField::plane_wave(1.0, Vec2(1.0, 0.0));
  const auto a = solve_soft(big, 1.0, inc), b = solve_soft(grown, 1.0, inc);
  CHECK(max_diff(a.neumann_trace, b.neumann_trace) < 1e-10);
  const auto c = solve_hard(big, 1.0, inc), d = solve_hard(grown, 1.0, inc);
  CHECK(max_diff(c.dirichlet_trace, d.dirichlet_trace) < 1e-10);
}

TEST_CASE("interior eigenvalue guard") {
  const double j01 = 2.404825557695773;  // first zero of J_0
  const double jp11 = 1.841183781340659; // first zero of J_1'
  const auto disk = make_disk(1.0, 64);
  CHECK_THROWS_AS(ForwardSolver(disk, j01, ObstacleKind::hard), ResonanceError);
  CHECK_THROWS_AS(ForwardSolver(disk, jp11, ObstacleKind::soft), ResonanceError);
  CHECK_NOTHROW(ForwardSolver(disk, j01, ObstacleKind::soft));
  CHECK_NOTHROW(check_disk_resonance(1.0, 1.0, ObstacleKind::soft));
  CHECK_NOTHROW(check_disk_resonance(1.0, 1.0, ObstacleKind::hard));
  // the same circle without disk metadata is caught by the condition estimate
  const auto plain = BoundaryCurve::from_nodes(make_disk(1.0, 64).nodes());
  CHECK_THROWS_AS(ForwardSolver(plain, j01, ObstacleKind::hard), ResonanceError);
}
