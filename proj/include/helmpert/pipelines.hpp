#pragma once

// The four command-line experiments. Each writes its files into `out_dir`
// (created if needed) and returns an exit status: 0 success, 3 a convergence
// check outside its window.

#include "helmpert/scenario.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace helmpert {

std::string_view library_version();
/// First-line comment of every CSV: "helmpert <version> <command>".
std::string version_stamp(std::string_view command);

struct RunReport {
  int exit_code = 0;
  std::vector<std::filesystem::path> files;
  std::vector<std::string> messages; // human-readable summary lines
  std::vector<std::string> warnings;
};

RunReport run_forward(const Scenario &s, const std::filesystem::path &out_dir);
RunReport run_convergence(const Scenario &s, const std::filesystem::path &out_dir);
RunReport run_dno(const Scenario &s, const std::filesystem::path &out_dir);
RunReport run_reconstruct(const Scenario &s, const std::filesystem::path &out_dir);

RunReport run_experiment(ExperimentKind kind, const Scenario &s, const std::filesystem::path &out_dir);

} // namespace helmpert
