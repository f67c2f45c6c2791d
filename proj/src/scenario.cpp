#include "efield/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <initializer_list>
#include "json.hpp"

#include "efield/error.hpp"
#include "efield/io.hpp"

namespace efield::scenario {

using nlohmann::json;

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::kinetic_aggregate: return "kinetic-aggregate";
    case Mode::simulate_nonlinear: return "simulate-nonlinear";
    case Mode::simulate_linear: return "simulate-linear";
    case Mode::dispersion_sweep: return "dispersion-sweep";
    case Mode::credit_series: return "credit-series";
  }
  return "?";
}

double Range::at(std::size_t i) const {
  if (count <= 1) return min;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

namespace {

// A JSON object plus its dotted location, for error messages.
class Node {
 public:
  Node(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) fail("must be an object");
  }

  void allow(std::initializer_list<std::string_view> keys) const {
    for (const auto& [key, value] : j_.items()) {
      bool known = false;
      for (auto k : keys) known = known || key == k;
      if (!known) throw ConfigError("unknown key \"" + key + "\" in " + where_);
    }
  }

  bool has(std::string_view key) const { return j_.contains(key); }

  const json& get(std::string_view key) const {
    if (!has(key)) throw ConfigError("missing required key \"" + std::string(key) + "\" in " + where_);
    return j_.at(key);
  }

  Node child(std::string_view key) const { return Node(get(key), path(key)); }

  double number(std::string_view key) const { return as_number(get(key), path(key)); }
  double number(std::string_view key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  std::size_t count(std::string_view key) const { return as_count(get(key), path(key)); }
  std::size_t count(std::string_view key, std::size_t fallback) const {
    return has(key) ? count(key) : fallback;
  }

  std::string text(std::string_view key) const {
    const json& v = get(key);
    if (!v.is_string()) throw ConfigError(path(key) + " must be a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(std::string_view key) const {
    const json& v = get(key);
    if (!v.is_array()) throw ConfigError(path(key) + " must be an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i)
      out.push_back(as_number(v[i], path(key) + "[" + std::to_string(i) + "]"));
    return out;
  }

  std::string path(std::string_view key) const {
    return where_ == "scenario" ? std::string(key) : where_ + "." + std::string(key);
  }

  static double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(where + " must be finite");
    return x;
  }

  static std::size_t as_count(const json& v, const std::string& where) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
      throw ConfigError(where + " must be a non-negative integer");
    return v.get<std::size_t>();
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(where_ + " " + what); }

  const json& j_;
  std::string where_;
};

Mode parse_mode(const std::string& s) {
  for (Mode m : {Mode::kinetic_aggregate, Mode::simulate_nonlinear, Mode::simulate_linear,
                 Mode::dispersion_sweep, Mode::credit_series})
    if (s == to_string(m)) return m;
  throw ConfigError("unknown mode \"" + s + "\"");
}

void parse_space(const Node& node, ScenarioConfig& cfg) {
  node.allow({"dim", "bounds"});
  const std::size_t dim = node.count("dim");
  if (dim == 0) throw ConfigError("space.dim must be positive");
  const json& b = node.get("bounds");
  if (!b.is_array()) throw ConfigError("space.bounds must be an array");
  // Either one [lo, hi] pair for every axis or a list of dim pairs.
  auto pair = [](const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2) throw ConfigError(where + " must be [lo, hi]");
    espace::Interval in{Node::as_number(v[0], where), Node::as_number(v[1], where)};
    if (!(in.lo < in.hi)) throw ConfigError(where + " needs lo < hi");
    return in;
  };
  if (b.size() == 2 && b[0].is_number()) {
    cfg.bounds.assign(dim, pair(b, "space.bounds"));
  } else {
    if (b.size() != dim)
      throw ConfigError("space.bounds lists " + std::to_string(b.size()) + " axes for dim " +
                        std::to_string(dim));
    for (std::size_t i = 0; i < dim; ++i)
      cfg.bounds.push_back(pair(b[i], "space.bounds[" + std::to_string(i) + "]"));
  }
}

void parse_grid(const Node& node, ScenarioConfig& cfg) {
  node.allow({"nodes_per_axis", "boundary"});
  cfg.nodes_per_axis = node.count("nodes_per_axis");
  if (cfg.nodes_per_axis < 3) throw ConfigError("grid.nodes_per_axis must be at least 3");
  if (node.has("boundary")) {
    try {
      cfg.boundary = espace::parse_boundary(node.text("boundary"));
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("grid.boundary: ") + e.what());
    }
  }
}

void parse_params(const Node& node, ScenarioConfig& cfg) {
  node.allow({"a1", "a2", "b1", "b2", "alpha1", "alpha2", "beta1", "beta2"});
  auto one = [&](std::string_view plain, std::string_view greek) {
    if (node.has(plain) && node.has(greek))
      throw ConfigError("params gives both \"" + std::string(plain) + "\" and \"" +
                        std::string(greek) + "\"");
    return node.has(greek) ? node.number(greek) : node.number(plain);
  };
  cfg.params = {one("a1", "alpha1"), one("a2", "alpha2"), one("b1", "beta1"), one("b2", "beta2")};
}

void parse_background(const Node& node, ScenarioConfig& cfg) {
  node.allow({"CL0", "PC0"});
  cfg.cl0 = node.number("CL0");
  cfg.pc0 = node.number("PC0");
  if (!(cfg.cl0 > 0.0) || !(cfg.pc0 > 0.0))
    throw ConfigError("background.CL0 and background.PC0 must be positive");
}

void parse_initial(const Node& node, ScenarioConfig& cfg) {
  auto& init = cfg.initial;
  const std::string kind = node.text("kind");
  if (kind == "uniform") {
    node.allow({"kind"});
    init.kind = InitialCondition::Kind::uniform;
  } else if (kind == "plane-wave") {
    node.allow({"kind", "k", "amplitude", "branch"});
    init.kind = InitialCondition::Kind::plane_wave;
    init.k = node.numbers("k");
    init.amplitude = node.number("amplitude");
    init.branch = node.count("branch", 0);
    if (init.branch > 3) throw ConfigError("initial.branch must be 0..3");
    if (init.k.size() != 2 * cfg.bounds.size())
      throw ConfigError("initial.k needs " + std::to_string(2 * cfg.bounds.size()) +
                        " components (x block then y block)");
  } else if (kind == "file") {
    node.allow({"kind", "path"});
    init.kind = InitialCondition::Kind::file;
    init.path = node.text("path");
  } else {
    throw ConfigError("unknown initial.kind \"" + kind + "\"");
  }
}

void parse_run(const Node& node, ScenarioConfig& cfg) {
  node.allow({"steps", "periods", "cfl_factor", "snapshot_every", "noise_filter"});
  auto& run = cfg.run;
  if (node.has("steps") == node.has("periods"))
    throw ConfigError("run needs exactly one of \"steps\" and \"periods\"");
  run.steps = node.count("steps", 0);
  run.periods = node.number("periods", 0.0);
  if (node.has("periods") && !(run.periods > 0.0))
    throw ConfigError("run.periods must be positive");
  run.cfl_factor = node.number("cfl_factor", 0.5);
  if (!(run.cfl_factor > 0.0 && run.cfl_factor <= 1.0))
    throw ConfigError("run.cfl_factor must lie in (0, 1]");
  run.snapshot_every = node.count("snapshot_every", 0);
  if (node.has("noise_filter")) {
    run.noise_filter = node.number("noise_filter");
    if (*run.noise_filter < 0.0 || *run.noise_filter >= 1.0)
      throw ConfigError("run.noise_filter must lie in [0, 1)");
  }
}

Range parse_range(const Node& node) {
  node.allow({"min", "max", "count"});
  Range r{node.number("min"), node.number("max"), node.count("count")};
  if (r.count == 0) throw ConfigError(node.path("count") + " must be positive");
  return r;
}

void parse_sweep(const Node& node, ScenarioConfig& cfg) {
  node.allow({"alpha1", "alpha2", "beta1", "beta2", "k"});
  SweepSettings s;
  s.alpha1 = parse_range(node.child("alpha1"));
  s.alpha2 = parse_range(node.child("alpha2"));
  s.beta1 = node.number("beta1");
  s.beta2 = node.number("beta2");
  if (node.has("k")) s.k_norms = node.numbers("k");
  if (s.k_norms.empty()) throw ConfigError("sweep.k must list at least one wave number");
  for (double k : s.k_norms)
    if (!(k >= 0.0)) throw ConfigError("sweep.k entries must be non-negative");
  cfg.sweep = s;
}

void parse_kinetic(const Node& node, ScenarioConfig& cfg) {
  node.allow({"realizations", "transactions", "mean_amount", "velocity_scale", "input",
              "particles", "variables"});
  KineticSettings k;
  k.realizations = node.count("realizations", 1);
  k.transactions = node.count("transactions", 1000);
  k.mean_amount = node.number("mean_amount", 1.0);
  k.velocity_scale = node.number("velocity_scale", 0.1);
  if (node.has("input")) k.input = node.text("input");
  k.particles = node.count("particles", 0);
  k.variables = node.count("variables", 1);
  if (k.realizations == 0) throw ConfigError("kinetic.realizations must be positive");
  if (!(k.mean_amount > 0.0)) throw ConfigError("kinetic.mean_amount must be positive");
  if (!(k.velocity_scale >= 0.0)) throw ConfigError("kinetic.velocity_scale must be >= 0");
  cfg.kinetic = k;
}

void parse_credit(const Node& node, ScenarioConfig& cfg) {
  node.allow({"X"});
  cfg.credit = CreditSettings{node.number("X")};
  if (!(cfg.credit->X > 0.0)) throw ConfigError("credit.X must be positive");
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  const Node root(doc, "scenario");
  root.allow({"mode", "space", "grid", "params", "background", "initial", "run", "sweep",
              "kinetic", "credit", "seed", "out_dir"});

  ScenarioConfig cfg;
  cfg.mode = parse_mode(root.text("mode"));
  if (root.has("seed")) {
    const json& s = root.get("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
      throw ConfigError("seed must be a non-negative 64-bit integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  if (root.has("out_dir")) cfg.out_dir = root.text("out_dir");

  const bool needs_field = cfg.mode != Mode::dispersion_sweep;
  const bool needs_dynamics = cfg.mode == Mode::simulate_nonlinear ||
                              cfg.mode == Mode::simulate_linear ||
                              cfg.mode == Mode::credit_series;
  auto reject = [&](std::string_view key) {
    if (root.has(key))
      throw ConfigError("key \"" + std::string(key) + "\" is not used by mode " +
                        std::string(to_string(cfg.mode)));
  };

  if (needs_field) {
    parse_space(root.child("space"), cfg);
    parse_grid(root.child("grid"), cfg);
  } else {
    reject("space");
    reject("grid");
  }

  if (needs_dynamics) {
    parse_params(root.child("params"), cfg);
    parse_background(root.child("background"), cfg);
    parse_initial(root.child("initial"), cfg);
    parse_run(root.child("run"), cfg);
    if (cfg.run.periods > 0.0 && cfg.initial.kind != InitialCondition::Kind::plane_wave)
      throw ConfigError("run.periods needs a plane-wave initial condition");
  } else {
    for (auto key : {"params", "background", "initial", "run"}) reject(key);
  }

  if (cfg.mode == Mode::dispersion_sweep)
    parse_sweep(root.child("sweep"), cfg);
  else
    reject("sweep");

  if (cfg.mode == Mode::kinetic_aggregate)
    parse_kinetic(root.child("kinetic"), cfg);
  else
    reject("kinetic");

  if (cfg.mode == Mode::credit_series) {
    parse_credit(root.child("credit"), cfg);
    if (cfg.bounds.size() != 1) throw ConfigError("credit-series needs space.dim = 1");
    if (cfg.initial.kind != InitialCondition::Kind::plane_wave)
      throw ConfigError("credit-series needs a plane-wave initial condition");
  } else {
    reject("credit");
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  ScenarioConfig cfg = parse_scenario(io::read_text(path));
  cfg.source_dir = std::filesystem::path(path).parent_path().string();
  return cfg;
}

}  // namespace efield::scenario
