#include "helmpert/errors.hpp"
#include "helmpert/pipelines.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace helmpert;

namespace {

int run(ExperimentKind kind, const std::string &scenario_path, const std::string &out, int nodes) {
  Scenario s = load_scenario(scenario_path);
  if (nodes > 0) s.nodes = nodes;
  if (!s.experiment) s.experiment = kind;
  validate_scenario(s);
  const auto report = run_experiment(kind, s, out);
  for (const auto &w : report.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto &m : report.messages) std::cout << m << '\n';
  for (const auto &f : report.files) std::cout << "wrote " << f.string() << '\n';
  if (report.exit_code == 3) std::cerr << "convergence check outside its window\n";
  return report.exit_code;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"2D exterior Helmholtz shape-perturbation experiments"};
  app.set_version_flag("--version", version_stamp(""));
  app.require_subcommand(1);

  std::string scenario, out = ".";
  int nodes = 0;
  std::optional<ExperimentKind> chosen;
  for (auto kind : {ExperimentKind::forward, ExperimentKind::convergence, ExperimentKind::dno,
                    ExperimentKind::reconstruct}) {
    static const char *help[] = {"solve on the base and deformed curves; series comparison for disks",
                                 "remainder order of the bracket expansion over the eps list",
                                 "DtN / NtD expansion defects and bracket identities",
                                 "recover Fourier coefficients of h from synthetic brackets"};
    auto *sub = app.add_subcommand(std::string(to_string(kind)), help[static_cast<int>(kind)]);
    sub->add_option("--scenario", scenario, "TOML scenario file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory")->capture_default_str();
    sub->add_option("--nodes", nodes, "override geometry.nodes")->check(CLI::PositiveNumber);
    sub->callback([&chosen, kind] { chosen = kind; });
  }
  CLI11_PARSE(app, argc, argv);

  try {
    return run(*chosen, scenario, out, nodes);
  } catch (const ScenarioError &e) {
    std::cerr << "scenario error: " << e.what() << '\n';
    return 1;
  } catch (const UnrecoverableModeError &e) {
    std::cerr << "reconstruction failed: " << e.what() << '\n';
    return 4;
  } catch (const ResonanceError &e) {
    std::cerr << "resonance: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
