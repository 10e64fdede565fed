#include "helmpert/pipelines.hpp"

#include "helmpert/errors.hpp"
#include "helmpert/recon.hpp"
#include "helmpert/spectral.hpp"

#include <fstream>
#include <sstream>

namespace helmpert {

namespace {

std::ofstream open_out(const std::filesystem::path &path, RunReport &report) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  report.files.push_back(path);
  return os;
}

void write_traces(std::ostream &os, const ScatterSolution &u, const std::string &stamp) {
  os << "# " << stamp << '\n';
  os << "node,x,y,re_u,im_u,re_dudn,im_dudn\n";
  const auto &c = u.boundary;
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    const cplx a = u.dirichlet_trace.values[j], b = u.neumann_trace.values[j];
    os << j << ',' << format_number(c.node(j).x()) << ',' << format_number(c.node(j).y()) << ','
       << format_number(a.real()) << ',' << format_number(a.imag()) << ',' << format_number(b.real()) << ','
       << format_number(b.imag()) << '\n';
  }
}

std::vector<double> need_epsilons(const Scenario &s, std::size_t min_count, const char *command) {
  if (s.epsilons.size() < min_count)
    throw ScenarioError(s.source + ": perturbation.epsilons: " + command + " needs at least " +
                        std::to_string(min_count) + " values");
  return s.epsilons;
}

std::string fmt(const char *f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

} // namespace

std::string_view library_version() { return HELMPERT_VERSION; }

std::string version_stamp(std::string_view command) {
  std::string out = "helmpert " + std::string(library_version());
  if (!command.empty()) out += " " + std::string(command);
  return out;
}

RunReport run_forward(const Scenario &s, const std::filesystem::path &out_dir) {
  std::filesystem::create_directories(out_dir);
  RunReport report;
  const auto stamp = version_stamp("forward");
  const auto curve = s.curve();
  const auto inc = s.incident();
  const auto u = ForwardSolver(curve, s.wave_number, s.obstacle).solve(inc);
  {
    auto os = open_out(out_dir / "forward_base.csv", report);
    write_traces(os, u, stamp);
  }

  if (s.is_disk()) {
    const auto ref = disk_series_oracle(curve, s.wave_number, inc, s.obstacle);
    auto os = open_out(out_dir / "forward_oracle.csv", report);
    os << "# " << stamp << '\n';
    os << "node,re_u_series,im_u_series,re_dudn_series,im_dudn_series,abs_err_u,abs_err_dudn\n";
    double worst = 0.0;
    for (Eigen::Index j = 0; j < curve.size(); ++j) {
      const cplx a = ref.dirichlet_trace.values[j], b = ref.neumann_trace.values[j];
      const double ea = std::abs(a - u.dirichlet_trace.values[j]), eb = std::abs(b - u.neumann_trace.values[j]);
      worst = std::max({worst, ea, eb});
      os << j << ',' << format_number(a.real()) << ',' << format_number(a.imag()) << ',' << format_number(b.real())
         << ',' << format_number(b.imag()) << ',' << format_number(ea) << ',' << format_number(eb) << '\n';
    }
    auto sum = open_out(out_dir / "forward_summary.csv", report);
    sum << "# " << stamp << '\n' << "surface,nodes,max_abs_err\n" << "base," << curve.size() << ','
        << format_number(worst) << '\n';
    report.messages.push_back("series oracle max_abs_err " + fmt("%.3e", worst));
  }

  if (!s.epsilons.empty() && !s.profile_coeffs.empty()) {
    const auto moved = perturb_boundary(curve, s.profile(s.epsilons.front()));
    const auto ue = ForwardSolver(moved, s.wave_number, s.obstacle).solve(inc);
    auto os = open_out(out_dir / "forward_perturbed.csv", report);
    write_traces(os, ue, stamp + " eps=" + format_number(s.epsilons.front()));
  }
  return report;
}

RunReport run_convergence(const Scenario &s, const std::filesystem::path &out_dir) {
  const auto eps = need_epsilons(s, 3, "convergence");
  std::filesystem::create_directories(out_dir);
  RunReport report;
  const OrderStudySetup setup{s.curve(), s.wave_number, s.obstacle, s.incident(), s.profile(0.0), s.test_mode};
  const auto st = order_study(setup, eps);
  {
    auto os = open_out(out_dir / "convergence.csv", report);
    write_order_csv(os, st, version_stamp("convergence"));
  }
  report.messages.push_back("fitted slope " + fmt("%.4f", st.slope));
  if (st.floor_contaminated) report.warnings.push_back("residuals do not decrease monotonically: quadrature floor reached");
  if (!st.slope_within(1.8, 2.2)) report.exit_code = 3;
  return report;
}

RunReport run_dno(const Scenario &s, const std::filesystem::path &out_dir) {
  const auto eps = need_epsilons(s, 3, "dno");
  std::filesystem::create_directories(out_dir);
  RunReport report;
  const auto curve = s.curve();
  const auto n = static_cast<int>(curve.size());
  const auto f = make_density(curve, spectral::synthesize({{s.data_mode, 1.0}}, n));
  const auto g = make_density(curve, spectral::synthesize({{s.pair_mode, 1.0}}, n));
  const auto name = std::string(to_string(s.map));

  const auto defects = map_defect_study(curve, s.wave_number, s.map, s.profile(0.0), f, eps);
  {
    auto os = open_out(out_dir / (name + "_defects.csv"), report);
    write_defect_csv(os, defects, version_stamp("dno " + name));
  }
  const auto br = map_bracket_study(curve, s.wave_number, s.map, s.profile(0.0), f, g, eps);
  {
    auto os = open_out(out_dir / (name + "_bracket.csv"), report);
    write_order_csv(os, br, version_stamp("dno " + name + " bracket"));
  }
  report.messages.push_back("defect slope " + fmt("%.4f", defects.slope_zeroth) + " -> " +
                            fmt("%.4f", defects.slope_first) + " after correction");
  report.messages.push_back("bracket remainder slope " + fmt("%.4f", br.slope));
  if (br.floor_contaminated) report.warnings.push_back("bracket residuals reached the quadrature floor");
  const bool ok = defects.slope_zeroth > 0.8 && defects.slope_zeroth < 1.2 && defects.slope_first >= 1.8 &&
                  defects.slope_first <= 2.2 && br.slope >= 1.8;
  if (!ok) report.exit_code = 3;
  return report;
}

RunReport run_reconstruct(const Scenario &s, const std::filesystem::path &out_dir) {
  if (!s.is_disk()) throw UnsupportedGeometryError(s.source + ": reconstruction needs a disk (geometry.radius)");
  const auto eps = need_epsilons(s, 1, "reconstruct");
  std::filesystem::create_directories(out_dir);
  RunReport report;
  const auto stamp = version_stamp("reconstruct");
  const double rho = *s.radius, k = s.wave_number;
  const auto curve = s.curve();
  const auto profile = s.profile(eps.front());
  const auto pairs = default_mode_pairs(s.p_max, rho, k);
  const auto ms = synthesize_measurements(curve, k, profile, pairs);
  {
    auto os = open_out(out_dir / "measurements.csv", report);
    os << "# " << stamp << '\n' << "n,m,re_bracket,im_bracket\n";
    for (const auto &m : ms)
      os << m.pair.n << ',' << m.pair.m << ',' << format_number(m.value.real()) << ','
         << format_number(m.value.imag()) << '\n';
  }
  auto r = reconstruct(ms, rho, k, s.epsilon_known ? std::optional(eps.front()) : std::nullopt, s.p_max);
  attach_truth(r, profile);
  {
    auto os = open_out(out_dir / "reconstruction.json", report);
    write_reconstruction_json(os, r, stamp);
  }
  {
    auto os = open_out(out_dir / "reconstruction.csv", report);
    write_reconstruction_csv(os, r, stamp);
  }
  report.messages.push_back("max coefficient error " + fmt("%.3e", r.max_abs_error()));
  return report;
}

RunReport run_experiment(ExperimentKind kind, const Scenario &s, const std::filesystem::path &out_dir) {
  if (s.experiment && *s.experiment != kind)
    throw ScenarioError(s.source + ": experiment.kind: scenario is for '" + std::string(to_string(*s.experiment)) +
                        "', not '" + std::string(to_string(kind)) + "'");
  switch (kind) {
  case ExperimentKind::forward: return run_forward(s, out_dir);
  case ExperimentKind::convergence: return run_convergence(s, out_dir);
  case ExperimentKind::dno: return run_dno(s, out_dir);
  case ExperimentKind::reconstruct: return run_reconstruct(s, out_dir);
  }
  return {};
}

} // namespace helmpert
