#include "helmpert/errors.hpp"
#include "helmpert/layerpot.hpp"
#include "helmpert/specialfun.hpp"
#include "helmpert/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace helmpert;
using namespace helmpert::specialfun;
using std::numbers::pi;

namespace {

constexpr cplx I{0.0, 1.0};

Eigen::VectorXcd fourier_mode(int n, int size) {
  Eigen::VectorXcd v(size);
  for (int j = 0; j < size; ++j) v(j) = std::polar(1.0, n * 2 * pi * j / size);
  return v;
}

double off_mode_leakage(const Eigen::VectorXcd &v, int n) {
  const Eigen::VectorXcd c = spectral::fourier_coefficients(v);
  const auto half = v.size() / 2;
  double worst = 0.0;
  for (Eigen::Index p = -half; p < half; ++p)
    if (p != n) worst = std::max(worst, std::abs(c(p + half)));
  return worst;
}

// separation-of-variables eigenvalues on the circle of radius rho
cplx disk_single(int n, double k, double rho) {
  const int m = std::abs(n);
  return -0.5 * I * pi * rho * bessel_j(m, k * rho) * hankel1(m, k * rho);
}
cplx disk_double_avg(int n, double k, double rho) {
  const int m = std::abs(n);
  const double x = k * rho;
  return -0.25 * I * pi * rho * k * (bessel_j_derivative(m, x) * hankel1(m, x) + hankel1_derivative(m, x) * bessel_j(m, x));
}
cplx disk_hyper(int n, double k, double rho) {
  const int m = std::abs(n);
  const double x = k * rho;
  return -0.5 * I * pi * rho * k * k * bessel_j_derivative(m, x) * hankel1_derivative(m, x);
}

Eigen::VectorXcd random_density(std::mt19937 &rng, int size) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::map<int, cplx> c;
  for (int p = -6; p <= 6; ++p) c[p] = cplx(u(rng), u(rng)) / (1.0 + p * p);
  return spectral::synthesize(c, size);
}

} // namespace

TEST_CASE("Kress weights integrate the log kernel") {
  const int n = 32;
  const Eigen::VectorXd r = kress_log_weights(n);
  CHECK(std::abs(r.sum()) < 1e-13);
  // int ln(4 sin^2(s/2)) cos(m s) ds = -2 pi / m
  for (int m = 1; m < n / 2; ++m) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += r(j) * std::cos(m * 2 * pi * j / n);
    CHECK(std::abs(s + 2 * pi / m) < 1e-12);
  }
}

TEST_CASE("single layer on the circle") {
  const auto c64 = make_disk(1.0, 64);
  const auto s64 = assemble_single(c64, 1.0);
  CHECK(s64.kind() == OperatorKind::single);
  const Eigen::VectorXcd out = s64.apply(Eigen::VectorXcd(Eigen::VectorXcd::Ones(64)));
  CHECK(off_mode_leakage(out, 0) < 1e-8);

  const auto c128 = make_disk(1.0, 128);
  const auto c512 = make_disk(1.0, 512);
  const auto s128 = assemble_single(c128, 1.0);
  const auto s512 = assemble_single(c512, 1.0);
  for (int n : {0, 1, 3, 8}) {
    const cplx l128 = spectral::mode(s128.apply(fourier_mode(n, 128)), n);
    const cplx l512 = spectral::mode(s512.apply(fourier_mode(n, 512)), n);
    CHECK(std::abs(l128 - l512) < 1e-10);
    CHECK(std::abs(l128 - disk_single(n, 1.0, 1.0)) < 1e-10);
  }

  // symmetry of the kernel: S_ij / J_j = S_ji / J_i
  const auto star = make_star_curve({{0, 1.0}, {3, 0.1}, {-3, 0.1}}, 64);
  const Eigen::MatrixXcd m = assemble_single(star, 2.0).entries() * star.jacobian().cwiseInverse().asDiagonal();
  CHECK((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("single layer converges spectrally") {
  auto density = [](int size) {
    Eigen::VectorXcd v(size);
    for (int j = 0; j < size; ++j) v(j) = 1.0 / (1.1 - std::cos(2 * pi * j / size));
    return v;
  };
  const auto ref_curve = make_disk(1.0, 512);
  const Eigen::VectorXcd ref = assemble_single(ref_curve, 1.0).apply(density(512));
  auto error = [&](int n) {
    const Eigen::VectorXcd v = assemble_single(make_disk(1.0, n), 1.0).apply(density(n));
    double worst = 0.0;
    for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(v(j) - ref(j * (512 / n))));
    return worst;
  };
  const double e64 = error(64), e128 = error(128);
  CHECK(e64 / e128 >= 1e3);
}

TEST_CASE("double layer and its adjoint on the circle") {
  const auto c = make_disk(1.0, 128);
  const auto ops = assemble_layer_operators(c, 1.0);
  for (int n : {0, 1, 2, 5, 11}) {
    const Eigen::VectorXcd kv = ops.double_layer.apply(fourier_mode(n, 128));
    const Eigen::VectorXcd kt = ops.adjoint_double.apply(fourier_mode(n, 128));
    CHECK(off_mode_leakage(kv, n) < 1e-8);
    CHECK(off_mode_leakage(kt, n) < 1e-8);
    CHECK(std::abs(spectral::mode(kv, n) - disk_double_avg(n, 1.0, 1.0)) < 1e-10);
    CHECK(std::abs(spectral::mode(kt, n) - disk_double_avg(n, 1.0, 1.0)) < 1e-10);
  }
}

TEST_CASE("K and K* are adjoint in the arclength pairing") {
  const auto star = make_star_curve({{0, 1.0}, {2, 0.1}, {-2, 0.1}, {5, cplx(0, 0.02)}, {-5, cplx(0, -0.02)}}, 128);
  const auto ops = assemble_layer_operators(star, 1.5);
  const Eigen::VectorXd w = star.weights();
  std::mt19937 rng(20261015);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXcd phi = random_density(rng, 128);
    const Eigen::VectorXcd psi = random_density(rng, 128);
    const cplx lhs = (ops.double_layer.apply(phi).cwiseProduct(psi).cwiseProduct(w.cast<cplx>())).sum();
    const cplx rhs = (phi.cwiseProduct(ops.adjoint_double.apply(psi)).cwiseProduct(w.cast<cplx>())).sum();
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("hypersingular operator") {
  const auto c = make_disk(1.0, 128);
  const auto s = assemble_single(c, 1.0);
  const auto h = assemble_hypersingular(c, s);
  CHECK(h.kind() == OperatorKind::hypersingular);
  CHECK(off_mode_leakage(h.apply(Eigen::VectorXcd(Eigen::VectorXcd::Ones(128))), 0) < 1e-10);
  for (int n : {0, 1, 4, 9}) {
    const Eigen::VectorXcd hv = h.apply(fourier_mode(n, 128));
    CHECK(off_mode_leakage(hv, n) < 1e-8);
    CHECK(std::abs(spectral::mode(hv, n) - disk_hyper(n, 1.0, 1.0)) < 1e-9);
    const Eigen::VectorXcd matvec = apply_hypersingular(c, s, fourier_mode(n, 128));
    CHECK((matvec - hv).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("surface Laplacian identity for the double layer on the circle") {
  // avg of one-sided d^2 D/dnu^2 + d^2/ds^2 K + k^2 K = -kappa dD/dnu
  const int size = 256;
  const double k = 1.0, rho = 1.0;
  const auto c = make_disk(rho, size);
  const auto ops = assemble_layer_operators(c, k);
  const auto h = assemble_hypersingular(c, ops.single);
  for (int n : {1, 3, 6}) {
    const Eigen::VectorXcd phi = fourier_mode(n, size);
    const double x = k * rho;
    const int m = n;
    // J'' and H'' from Bessel's equation
    const double j = bessel_j(m, x), jd = bessel_j_derivative(m, x);
    const cplx hh = hankel1(m, x), hd = hankel1_derivative(m, x);
    const double jdd = -jd / x - (1.0 - double(m * m) / (x * x)) * j;
    const cplx hdd = -hd / x - (1.0 - double(m * m) / (x * x)) * hh;
    const cplx d2_out = -0.5 * I * pi * rho * k * jd * k * k * hdd;
    const cplx d2_in = -0.5 * I * pi * rho * k * hd * k * k * jdd;
    const Eigen::VectorXcd d2 = 0.5 * (d2_out + d2_in) * phi;
    const Eigen::VectorXcd kphi = ops.double_layer.apply(phi);
    const Eigen::VectorXcd lhs = d2 + c.arclength_derivative(c.arclength_derivative(kphi)) + k * k * kphi;
    const Eigen::VectorXcd rhs = -c.curvature().cast<cplx>().cwiseProduct(h.apply(phi));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("normal derivative of the double layer has no jump") {
  const int size = 128;
  const double k = 1.0;
  const auto c = make_star_curve({{0, 1.0}, {2, 0.08}, {-2, 0.08}}, size);
  const Eigen::VectorXcd phi = spectral::synthesize({{2, 1.0}, {-1, cplx(0, 0.5)}}, size);
  const Eigen::VectorXcd on = apply_hypersingular(c, assemble_single(c, k), phi);

  const int fine_n = 32768;
  const auto fine = c.resampled(fine_n);
  const Eigen::VectorXcd fine_phi = spectral::resample(phi, fine_n);
  const LayerPotentialEvaluator ev(fine, k);
  const double offset = 1e-3;
  const std::vector<Eigen::Index> picks = {0, 17, 40, 77, 101};
  Points pts(2 * picks.size(), 2), dirs(2 * picks.size(), 2);
  for (std::size_t q = 0; q < picks.size(); ++q) {
    pts.row(2 * q) = c.nodes().row(picks[q]) + offset * c.normals().row(picks[q]);
    pts.row(2 * q + 1) = c.nodes().row(picks[q]) - offset * c.normals().row(picks[q]);
    dirs.row(2 * q) = dirs.row(2 * q + 1) = c.normals().row(picks[q]);
  }
  const Eigen::VectorXcd v = ev.double_directional(pts, dirs, fine_phi).col(0);
  for (std::size_t q = 0; q < picks.size(); ++q) {
    const cplx out = v(2 * q), in = v(2 * q + 1), ref = on(picks[q]);
    CHECK(std::abs(out - ref) < 50 * offset);
    CHECK(std::abs(in - ref) < 50 * offset);
  }
}

TEST_CASE("jump relations by extrapolation") {
  const auto c = make_disk(1.0, 256);
  const auto res = jump_check(c, 1.0, make_density(c, fourier_mode(3, 256)));
  CHECK(res.worst() < 1e-6);
  CHECK(res.single_continuity < 1e-8);
  CHECK(res.double_jump < 1e-6);
}

TEST_CASE("jump relations on a non-circular curve") {
  const auto c = make_star_curve({{0, 1.0}, {3, 0.05}, {-3, 0.05}}, 128);
  const auto res = jump_check(c, 2.0, make_density(c, spectral::synthesize({{1, 1.0}, {-4, 0.3}}, 128)));
  CHECK(res.worst() < 1e-6);
}

TEST_CASE("field evaluation") {
  const double k = 1.0;
  const auto c = make_star_curve({{0, 1.0}, {2, 0.1}, {-2, 0.1}}, 128);
  const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(128);
  Points pts(3, 2);
  pts << 2.0, 0.0, -1.0, 1.5, 0.3, -3.0;
  const auto z = eval_field(c, k, make_density(c, zero), make_density(c, zero), pts);
  CHECK(z.cwiseAbs().maxCoeff() == 0.0);

  // Green representation of a point source placed inside the obstacle
  const Vec2 z0(0.2, 0.1);
  Eigen::VectorXcd u(128), du(128);
  for (Eigen::Index j = 0; j < 128; ++j) {
    const Vec2 d = c.node(j) - z0;
    const double r = d.norm();
    u(j) = -0.25 * I * hankel1(0, k * r);
    du(j) = 0.25 * I * k * hankel1(1, k * r) * d.dot(c.normal(j)) / r;
  }
  const auto field = eval_field(c, k, make_density(c, du), make_density(c, u), pts);
  for (Eigen::Index p = 0; p < pts.rows(); ++p) {
    const double r = (Vec2(pts.row(p).transpose()) - z0).norm();
    CHECK(std::abs(field(p) - (-0.25 * I * hankel1(0, k * r))) < 1e-8);
  }

  // |u| ~ |x|^{-1/2}
  const double wavelength = 2 * pi / k;
  Points far(2, 2);
  far << 20 * wavelength, 0.0, 40 * wavelength, 0.0;
  const auto uf = eval_field(c, k, make_density(c, du), make_density(c, u), far);
  const double ratio = std::abs(uf(1)) / std::abs(uf(0));
  CHECK(ratio > 0.6);
  CHECK(ratio < 0.8);

  Points inside(1, 2);
  inside << 0.1, 0.0;
  CHECK_THROWS_AS(eval_field(c, k, make_density(c, du), make_density(c, u), inside), EvaluationAccuracyError);
  Points near(1, 2);
  near << c.node(0).x() + 0.01, c.node(0).y();
  CHECK_THROWS_AS(eval_field(c, k, make_density(c, du), make_density(c, u), near), EvaluationAccuracyError);
  const auto other = make_disk(1.0, 128);
  CHECK_THROWS_AS(eval_field(c, k, make_density(other, du), make_density(c, u), pts), CurveMismatchError);
}

TEST_CASE("exterior Dirichlet operator is well conditioned at k = 1") {
  const auto c = make_disk(1.0, 128);
  const auto kt = assemble_adjoint_double(c, 1.0);
  const Eigen::MatrixXcd a = -0.5 * Eigen::MatrixXcd::Identity(128, 128) + kt.entries();
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const auto sv = svd.singularValues();
  CHECK(sv(0) / sv(sv.size() - 1) < 1e4);
}

TEST_CASE("operator matrix bookkeeping") {
  const auto c = make_disk(1.0, 16);
  const auto s = assemble_single(c, 1.0);
  std::ostringstream os;
  s.dump(os);
  CHECK(os.str().size() == 8 + 16 * 16 * 16);
  const auto other = make_disk(1.0, 16);
  CHECK_THROWS_AS(s.apply(make_density(other, Eigen::VectorXcd::Ones(16))), CurveMismatchError);
  CHECK(to_string(OperatorKind::first_order_A1) == "first_order_A1");
  const std::vector<double> xs = {0.1, 0.2, 0.3};
  const std::vector<cplx> ys = {1.0 + 0.1 + 0.01, 1.0 + 0.2 + 0.04, 1.0 + 0.3 + 0.09};
  CHECK(std::abs(extrapolate_to_zero(xs, ys) - 1.0) < 1e-14);
}
