#include "helmpert/scenario.hpp"

#include "helmpert/errors.hpp"

#include <toml.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace helmpert {

namespace {

struct Context {
  const std::string &source;

  [[noreturn]] void fail(const toml::node *node, const std::string &field, const std::string &what) const {
    std::ostringstream os;
    os << source;
    if (node && node->source().begin) os << ':' << node->source().begin.line;
    os << ": " << field << ": " << what;
    throw ScenarioError(os.str());
  }

  [[noreturn]] void fail(const toml::table &table, const std::string &field, const std::string &what) const {
    fail(static_cast<const toml::node *>(&table), field, what);
  }
};

double get_number(const Context &ctx, const toml::node &node, const std::string &field) {
  if (auto v = node.value<double>()) return *v;
  ctx.fail(&node, field, "expected a number");
}

int get_int(const Context &ctx, const toml::node &node, const std::string &field) {
  if (auto v = node.as_integer()) return static_cast<int>(v->get());
  ctx.fail(&node, field, "expected an integer");
}

std::string get_string(const Context &ctx, const toml::node &node, const std::string &field) {
  if (auto v = node.as_string()) return v->get();
  ctx.fail(&node, field, "expected a string");
}

const toml::table *section(const Context &ctx, const toml::table &root, const char *name, bool required) {
  const toml::node *n = root.get(name);
  if (!n) {
    if (required) ctx.fail(root, name, "missing section");
    return nullptr;
  }
  if (!n->is_table()) ctx.fail(n, name, "expected a table");
  return n->as_table();
}

void reject_unknown(const Context &ctx, const toml::table &t, const std::string &prefix,
                    std::initializer_list<std::string_view> known) {
  for (const auto &[key, node] : t) {
    bool ok = false;
    for (auto k : known) ok = ok || key.str() == k;
    if (!ok) ctx.fail(&node, prefix + std::string(key.str()), "unknown key");
  }
}

// [[p, amplitude], ...] into e^{ip theta} coefficients; sine adds -i/2, cosine 1/2
void add_terms(const Context &ctx, const toml::node &node, const std::string &field, bool sine, FourierSeries &out) {
  const auto *arr = node.as_array();
  if (!arr) ctx.fail(&node, field, "expected an array of [mode, amplitude] pairs");
  for (const auto &item : *arr) {
    const auto *pair = item.as_array();
    if (!pair || pair->size() != 2) ctx.fail(&item, field, "each entry must be [mode, amplitude]");
    const int p = get_int(ctx, *pair->get(0), field);
    const double a = get_number(ctx, *pair->get(1), field);
    if (p < 0) ctx.fail(&item, field, "mode must be non-negative");
    if (p == 0) {
      if (sine) ctx.fail(&item, field, "sin(0 theta) is identically zero");
      out[0] += a;
      continue;
    }
    const cplx c = sine ? cplx(0.0, -0.5 * a) : cplx(0.5 * a, 0.0);
    out[p] += c;
    out[-p] += std::conj(c);
  }
}

// reconstruction always uses soft solves; the maps pick their own interior problem
ObstacleKind guarded_kind(const Scenario &s) {
  if (s.experiment == ExperimentKind::reconstruct) return ObstacleKind::soft;
  if (s.experiment == ExperimentKind::dno) return s.map == MapKind::dno ? ObstacleKind::soft : ObstacleKind::hard;
  return s.obstacle;
}

} // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
  case ExperimentKind::forward: return "forward";
  case ExperimentKind::convergence: return "convergence";
  case ExperimentKind::dno: return "dno";
  case ExperimentKind::reconstruct: return "reconstruct";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  for (auto k : {ExperimentKind::forward, ExperimentKind::convergence, ExperimentKind::dno, ExperimentKind::reconstruct})
    if (to_string(k) == text) return k;
  throw std::invalid_argument("unknown experiment '" + std::string(text) + "'");
}

BoundaryCurve Scenario::curve() const {
  if (radius) return make_disk(*radius, nodes);
  return make_star_curve(radial_coeffs, nodes);
}

PerturbationProfile Scenario::profile(double epsilon) const {
  if (profile_coeffs.empty()) return PerturbationProfile::zero(nodes, epsilon);
  return PerturbationProfile::from_coefficients(profile_coeffs, epsilon, nodes);
}

IncidentField Scenario::incident() const {
  if (plane_wave) return IncidentField::plane_wave(wave_number, direction);
  return IncidentField::cylindrical(wave_number, incident_order);
}

void validate_scenario(const Scenario &s) {
  auto bad = [&](const std::string &field, const std::string &what) {
    throw ScenarioError(s.source + ": " + field + ": " + what);
  };
  if (s.nodes < 16 || s.nodes % 2 != 0) bad("geometry.nodes", "need an even node count >= 16");
  if (!(s.wave_number > 0.0)) bad("physics.wave_number", "must be positive");
  if (s.is_disk()) {
    try {
      check_disk_resonance(*s.radius, s.wave_number, guarded_kind(s));
    } catch (const ResonanceError &e) {
      bad("physics.wave_number", e.what());
    }
  }
}

Scenario parse_scenario(std::string_view text, const std::string &source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error &e) {
    std::ostringstream os;
    os << source << ':' << e.source().begin.line << ": " << e.description();
    throw ScenarioError(os.str());
  }
  const Context ctx{source};
  reject_unknown(ctx, root, "", {"geometry", "physics", "incident", "perturbation", "experiment"});
  Scenario s;
  s.source = source;

  const auto *geo = section(ctx, root, "geometry", true);
  reject_unknown(ctx, *geo, "geometry.", {"radius", "radial_cos", "radial_sin", "nodes"});
  if (const auto *n = geo->get("radius")) {
    s.radius = get_number(ctx, *n, "geometry.radius");
    if (!(*s.radius > 0.0)) ctx.fail(n, "geometry.radius", "must be positive");
    if (geo->get("radial_cos") || geo->get("radial_sin"))
      ctx.fail(*geo, "geometry", "give either radius or radial_cos/radial_sin, not both");
  } else {
    if (const auto *n = geo->get("radial_cos")) add_terms(ctx, *n, "geometry.radial_cos", false, s.radial_coeffs);
    if (const auto *n = geo->get("radial_sin")) add_terms(ctx, *n, "geometry.radial_sin", true, s.radial_coeffs);
    if (s.radial_coeffs.empty()) ctx.fail(*geo, "geometry", "need radius or radial_cos/radial_sin");
  }
  if (const auto *n = geo->get("nodes")) s.nodes = get_int(ctx, *n, "geometry.nodes");

  const auto *phys = section(ctx, root, "physics", true);
  reject_unknown(ctx, *phys, "physics.", {"wave_number", "obstacle"});
  if (const auto *n = phys->get("wave_number")) s.wave_number = get_number(ctx, *n, "physics.wave_number");
  else ctx.fail(*phys, "physics.wave_number", "missing");
  if (const auto *n = phys->get("obstacle")) {
    try {
      s.obstacle = parse_obstacle_kind(get_string(ctx, *n, "physics.obstacle"));
    } catch (const std::invalid_argument &e) {
      ctx.fail(n, "physics.obstacle", e.what());
    }
  }

  if (const auto *inc = section(ctx, root, "incident", false)) {
    reject_unknown(ctx, *inc, "incident.", {"kind", "direction", "order"});
    if (const auto *n = inc->get("kind")) {
      const auto kind = get_string(ctx, *n, "incident.kind");
      if (kind == "cylindrical") s.plane_wave = false;
      else if (kind != "plane_wave") ctx.fail(n, "incident.kind", "must be 'plane_wave' or 'cylindrical'");
    }
    if (const auto *n = inc->get("direction")) {
      const auto *arr = n->as_array();
      if (!arr || arr->size() != 2) ctx.fail(n, "incident.direction", "expected [x, y]");
      s.direction = Vec2(get_number(ctx, *arr->get(0), "incident.direction"),
                         get_number(ctx, *arr->get(1), "incident.direction"));
      if (std::abs(s.direction.norm() - 1.0) > 1e-12) ctx.fail(n, "incident.direction", "must be a unit vector");
    }
    if (const auto *n = inc->get("order")) s.incident_order = get_int(ctx, *n, "incident.order");
  }

  if (const auto *pert = section(ctx, root, "perturbation", false)) {
    reject_unknown(ctx, *pert, "perturbation.", {"cos", "sin", "epsilon", "epsilons"});
    if (const auto *n = pert->get("cos")) add_terms(ctx, *n, "perturbation.cos", false, s.profile_coeffs);
    if (const auto *n = pert->get("sin")) add_terms(ctx, *n, "perturbation.sin", true, s.profile_coeffs);
    if (pert->get("epsilon") && pert->get("epsilons"))
      ctx.fail(*pert, "perturbation", "give epsilon or epsilons, not both");
    if (const auto *n = pert->get("epsilon")) s.epsilons = {get_number(ctx, *n, "perturbation.epsilon")};
    if (const auto *n = pert->get("epsilons")) {
      const auto *arr = n->as_array();
      if (!arr) ctx.fail(n, "perturbation.epsilons", "expected an array");
      for (const auto &e : *arr) s.epsilons.push_back(get_number(ctx, e, "perturbation.epsilons"));
    }
    for (std::size_t i = 0; i < s.epsilons.size(); ++i) {
      if (!(s.epsilons[i] > 0.0)) ctx.fail(pert, "perturbation.epsilons", "values must be positive");
      if (i > 0 && !(s.epsilons[i] < s.epsilons[i - 1]))
        ctx.fail(pert, "perturbation.epsilons", "values must be strictly decreasing");
    }
  }

  if (const auto *exp = section(ctx, root, "experiment", false)) {
    reject_unknown(ctx, *exp, "experiment.", {"kind", "test_mode", "map", "data_mode", "pair_mode", "p_max", "epsilon_known"});
    if (const auto *n = exp->get("kind")) {
      try {
        s.experiment = parse_experiment_kind(get_string(ctx, *n, "experiment.kind"));
      } catch (const std::invalid_argument &e) {
        ctx.fail(n, "experiment.kind", e.what());
      }
    }
    if (const auto *n = exp->get("test_mode")) s.test_mode = get_int(ctx, *n, "experiment.test_mode");
    if (const auto *n = exp->get("map")) {
      try {
        s.map = parse_map_kind(get_string(ctx, *n, "experiment.map"));
      } catch (const std::invalid_argument &e) {
        ctx.fail(n, "experiment.map", e.what());
      }
    }
    if (const auto *n = exp->get("data_mode")) s.data_mode = get_int(ctx, *n, "experiment.data_mode");
    if (const auto *n = exp->get("pair_mode")) s.pair_mode = get_int(ctx, *n, "experiment.pair_mode");
    if (const auto *n = exp->get("p_max")) {
      s.p_max = get_int(ctx, *n, "experiment.p_max");
      if (s.p_max < 0) ctx.fail(n, "experiment.p_max", "must be non-negative");
    }
    if (const auto *n = exp->get("epsilon_known")) {
      if (auto b = n->value<bool>()) s.epsilon_known = *b;
      else ctx.fail(n, "experiment.epsilon_known", "expected true or false");
    }
  }

  // node-level checks that carry line numbers
  if (const auto *n = geo->get("nodes"); n && (s.nodes < 16 || s.nodes % 2 != 0))
    ctx.fail(n, "geometry.nodes", "need an even node count >= 16");
  if (!(s.wave_number > 0.0)) ctx.fail(phys->get("wave_number"), "physics.wave_number", "must be positive");
  if (s.is_disk()) {
    try {
      check_disk_resonance(*s.radius, s.wave_number, guarded_kind(s));
    } catch (const ResonanceError &e) {
      ctx.fail(phys->get("wave_number"), "physics.wave_number", e.what());
    }
  }
  validate_scenario(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

} // namespace helmpert
