#pragma once

// TOML experiment description shared by the command-line pipelines.

#include "helmpert/dno_ndo.hpp"
#include "helmpert/forward.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace helmpert {

enum class ExperimentKind { forward, convergence, dno, reconstruct };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);

struct Scenario {
  std::string source; // file name, for messages

  // geometry: a disk of `radius`, or r(theta) = sum radial_coeffs[p] e^{ip theta}
  std::optional<double> radius;
  FourierSeries radial_coeffs;
  int nodes = 256;

  double wave_number = 1.0;
  ObstacleKind obstacle = ObstacleKind::soft;

  // incident field
  bool plane_wave = true;
  Vec2 direction{1.0, 0.0};
  int incident_order = 0;

  // perturbation h = sum cos/sin terms, plus eps or a decreasing eps list
  FourierSeries profile_coeffs;
  std::vector<double> epsilons;

  std::optional<ExperimentKind> experiment;
  int test_mode = 1;            // convergence
  MapKind map = MapKind::dno;   // dno
  int data_mode = 2;            // dno: f or g = e^{i data_mode theta}
  int pair_mode = 3;            // dno: second density of the bracket study
  int p_max = 6;                // reconstruct
  bool epsilon_known = true;    // reconstruct

  BoundaryCurve curve() const;
  PerturbationProfile profile(double epsilon) const;
  IncidentField incident() const;
  bool is_disk() const { return radius.has_value(); }
};

/// Parses and validates; ScenarioError messages carry "file:line: field: problem".
/// For disks the resonance guard for the obstacle kind (and map kind) runs here.
Scenario load_scenario(const std::filesystem::path &path);
Scenario parse_scenario(std::string_view text, const std::string &source = "<string>");

/// Re-applies validation after command-line overrides (node count).
void validate_scenario(const Scenario &s);

} // namespace helmpert
