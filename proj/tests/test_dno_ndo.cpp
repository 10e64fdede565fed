#include "helmpert/dno_ndo.hpp"
#include "helmpert/errors.hpp"
#include "helmpert/specialfun.hpp"
#include "helmpert/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace helmpert;

namespace {

cplx sigma_direct(double rho, int n, double k) {
  const int a = std::abs(n);
  return k * specialfun::hankel1_derivative(a, k * rho) / specialfun::hankel1(a, k * rho);
}

BoundaryDensity fourier_density(const BoundaryCurve &c, int n) {
  return make_density(c, spectral::synthesize({{n, 1.0}}, static_cast<int>(c.size())));
}

double max_abs(const Eigen::VectorXcd &v) { return v.cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("disk: Fourier modes are eigenfunctions") {
  const auto disk = make_disk(1.0, 128);
  for (double k : {0.5, 1.0, 2.0}) {
    for (int n : {0, 1, -2, 5, 9}) {
      const auto f = fourier_density(disk, n);
      const cplx s = sigma_direct(1.0, n, k);
      CHECK(max_abs(dno(disk, k, f).output.values - s * f.values) < 1e-8);
      CHECK(max_abs(ndo(disk, k, f).output.values - f.values / s) < 1e-8);
    }
  }
  const auto d2 = make_disk(1.7, 128);
  const auto f = fourier_density(d2, 3);
  CHECK(max_abs(dno(d2, 1.3, f).output.values - sigma_direct(1.7, 3, 1.3) * f.values) < 1e-8);
}

TEST_CASE("maps on a star curve") {
  const auto star = make_star_curve({{0, 1.0}, {5, 0.1}, {-5, 0.1}}, 192);
  const double k = 1.5;
  const auto v = radiating_mode(2, k, star);
  CHECK(max_abs(dno(star, k, v.dirichlet_trace).output.values - v.neumann_trace.values) < 1e-8);
  CHECK(max_abs(ndo(star, k, v.neumann_trace).output.values - v.dirichlet_trace.values) < 1e-8);

  const auto a = fourier_density(star, 1), b = fourier_density(star, -3);
  auto c = a;
  c.values = 2.0 * a.values - cplx(0, 3) * b.values;
  for (auto map : {dno, ndo}) {
    const auto lhs = map(star, k, c).output.values;
    const Eigen::VectorXcd rhs = 2.0 * map(star, k, a).output.values - cplx(0, 3) * map(star, k, b).output.values;
    CHECK(max_abs(lhs - rhs) < 1e-12 * max_abs(rhs));
  }

  // smooth non-modal data: N_0 (Lambda_0 g) = g
  Eigen::VectorXcd gv(star.size());
  for (Eigen::Index j = 0; j < gv.size(); ++j) gv[j] = std::exp(cplx(std::cos(2.0 * star.node(j).x()), star.node(j).y()));
  const auto g = make_density(star, gv);
  const auto back = dno(star, k, ndo(star, k, g).output).output;
  CHECK(max_abs(back.values - gv) < 1e-6);

  CHECK_THROWS_AS(dno(star, k, fourier_density(make_disk(1.0, 192), 1)), CurveMismatchError);
}

TEST_CASE("resonances are refused") {
  const auto disk = make_disk(1.0, 64);
  const auto f = fourier_density(disk, 0);
  CHECK_THROWS_AS(dno(disk, 1.841183781340659, f), ResonanceError);   // j'_{1,1}
  CHECK_THROWS_AS(ndo(disk, 2.404825557695773, f), ResonanceError);   // j_{0,1}
}

TEST_CASE("perturbed maps") {
  const auto disk = make_disk(1.0, 128);
  const auto f = fourier_density(disk, 2);
  const auto h = PerturbationProfile::cosine(1.0, 3, 0.0, 128);
  const auto z = dno_perturbed(disk, 1.0, h, f);
  CHECK(z.perturbed);
  CHECK(z.output.values == dno(disk, 1.0, f).output.values);
  CHECK(z.output.curve_id == disk.id());
  CHECK(ndo_perturbed(disk, 1.0, h, f).output.values == ndo(disk, 1.0, f).output.values);

  // inflation by eps gives the disk of radius 1 + eps
  const auto inflate = PerturbationProfile::cosine(1.0, 0, 0.05, 128);
  for (int n : {0, 3}) {
    const auto fn = fourier_density(disk, n);
    const cplx s = sigma_direct(1.05, n, 1.0);
    CHECK(max_abs(dno_perturbed(disk, 1.0, inflate, fn).output.values - s * fn.values) < 1e-8);
    CHECK(max_abs(ndo_perturbed(disk, 1.0, inflate, fn).output.values - fn.values / s) < 1e-8);
  }
}

TEST_CASE("first-order corrections raise the defect order") {
  const auto disk = make_disk(1.0, 256);
  const std::vector<double> eps = {1e-2, 5e-3, 2.5e-3};
  struct Case {
    MapKind kind;
    double k;
    int mode;
    PerturbationProfile h;
  };
  const std::vector<Case> cases = {
      {MapKind::dno, 1.0, 2, PerturbationProfile::cosine(1.0, 3, 0.0, 256)},
      {MapKind::dno, 2.0, 0, PerturbationProfile::sine(1.0, 5, 0.0, 256)},
      {MapKind::ndo, 1.0, 2, PerturbationProfile::cosine(1.0, 3, 0.0, 256)},
      {MapKind::ndo, 2.0, -1, PerturbationProfile::sine(1.0, 5, 0.0, 256)},
  };
  for (const auto &c : cases) {
    CAPTURE(to_string(c.kind));
    CAPTURE(c.k);
    const auto st = map_defect_study(disk, c.k, c.kind, c.h, fourier_density(disk, c.mode), eps);
    CHECK(st.slope_zeroth == doctest::Approx(1.0).epsilon(0.1));
    CHECK(st.slope_first == doctest::Approx(2.0).epsilon(0.1));
    // ||M_eps - M_0|| <= C eps with C stable
    const double c0 = st.rows.front().zeroth / eps.front(), c2 = st.rows.back().zeroth / eps.back();
    CHECK(std::abs(c0 - c2) < 0.1 * c2);
    for (const auto &r : st.rows) CHECK(r.first < r.zeroth);
  }

  // non-disk base curve
  const auto star = make_star_curve({{0, 1.0}, {4, 0.075}, {-4, 0.075}}, 256);
  const auto st = map_defect_study(star, 1.0, MapKind::dno, PerturbationProfile::cosine(1.0, 2, 0.0, 256),
                                   make_density(star, spectral::synthesize({{1, 1.0}}, 256)), eps);
  CHECK(st.slope_first == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("reconstruction identities for the maps") {
  const auto disk = make_disk(1.0, 256);
  const auto f = fourier_density(disk, 2), g = fourier_density(disk, 3);
  for (auto kind : {MapKind::dno, MapKind::ndo}) {
    CAPTURE(to_string(kind));
    const auto zero = PerturbationProfile::zero(256, 1e-2);
    const auto r0 = kind == MapKind::dno ? dno_bracket_leading(disk, 1.0, zero, f, g)
                                         : ndo_bracket_leading(disk, 1.0, zero, f, g);
    CHECK(std::abs(r0.value) < 1e-8);
    CHECK(std::abs(r0.leading_term) < 1e-8);

    // h = cos 5theta: h^2 has no mode 5, so the eps^2 term drops out and the remainder is eps^3
    const auto pure = map_bracket_study(disk, 1.0, kind, PerturbationProfile::cosine(1.0, 5, 0.0, 256), f, g,
                                        {2e-2, 1e-2, 5e-3});
    CHECK(std::abs(pure.rows.front().leading_term) > 1e-2);
    CHECK(pure.slope > 1.8);
    CHECK_FALSE(pure.floor_contaminated);

    const auto mixed = PerturbationProfile::from_coefficients({{5, 0.5}, {-5, 0.5}, {10, 0.25}, {-10, 0.25}}, 0.0, 256);
    const auto st = map_bracket_study(disk, 1.0, kind, mixed, f, g, {1e-2, 5e-3, 2.5e-3});
    CHECK(st.slope_within(1.8, 2.2));
    CHECK_FALSE(st.floor_contaminated);
  }
}

TEST_CASE("map bracket matches the scattering bracket to second order") {
  const int n = 256;
  const double k = 1.0;
  const auto disk = make_disk(1.0, n);
  const auto h = PerturbationProfile::cosine(1.0, 3, 0.0, n);
  const auto inc = IncidentField::plane_wave(k, Vec2(1, 0));
  const auto us = solve_soft(disk, k, inc);
  const auto v = radiating_mode(1, k, disk);
  std::vector<double> eps = {2e-2, 1e-2, 5e-3}, gap;
  for (double e : eps) {
    const auto ue = solve_soft(perturb_boundary(disk, h.with_epsilon(e)), k, inc);
    const cplx scat = bracket(ue, v, disk);
    const cplx map = dno_bracket_leading(disk, k, h.with_epsilon(e), us.dirichlet_trace, v.dirichlet_trace).value;
    gap.push_back(std::abs(scat - map));
    CHECK(gap.back() < 0.05 * std::abs(scat));
  }
  CHECK(fit_log_slope(eps, gap) > 1.8);
}

TEST_CASE("defect csv") {
  MapDefectStudy st;
  st.rows = {{0.01, 0.5, 0.25}};
  st.slope_zeroth = 1;
  st.slope_first = 2;
  std::ostringstream os;
  write_defect_csv(os, st, "v");
  CHECK(os.str() == "# v\nepsilon,defect_zeroth,defect_first,slope_zeroth,slope_first\n0.01,0.5,0.25,1,2\n");
  CHECK(parse_map_kind("ndo") == MapKind::ndo);
  CHECK_THROWS(parse_map_kind("dtn"));
}
