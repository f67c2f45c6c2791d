#pragma once

// JSON scenario files. Parsing is strict: unknown keys and missing required
// keys raise ConfigError naming the key and its enclosing object.
//
//   {
//     "mode": "simulate-linear",
//     "space": {"dim": 1, "bounds": [[0, 2]]},
//     "grid": {"nodes_per_axis": 64, "boundary": "periodic"},
//     "params": {"a1": 0.5, "a2": 0.5, "b1": -1, "b2": 1},
//     "background": {"CL0": 1, "PC0": 1},
//     "initial": {"kind": "plane-wave", "k": [3.14159, 3.14159], "amplitude": 1e-3},
//     "run": {"periods": 3, "cfl_factor": 0.5, "snapshot_every": 0},
//     "credit": {"X": 1},
//     "seed": 7,
//     "out_dir": "out/linear"
//   }

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "efield/espace.hpp"
#include "efield/hydro.hpp"

namespace efield::scenario {

enum class Mode {
  kinetic_aggregate,
  simulate_nonlinear,
  simulate_linear,
  dispersion_sweep,
  credit_series,
};

std::string_view to_string(Mode mode);

struct InitialCondition {
  enum class Kind { uniform, plane_wave, file };
  Kind kind = Kind::uniform;
  std::vector<double> k;   // 2n wave-vector components
  double amplitude = 0.0;
  std::size_t branch = 0;  // index into the ordered characteristic roots
  std::string path;
};

struct RunSettings {
  std::size_t steps = 0;
  double periods = 0.0;  // alternative to steps for plane-wave runs
  double cfl_factor = 0.5;
  std::size_t snapshot_every = 0;  // 0: initial and final snapshots only
  // Absent: chosen from the regime (see README).
  std::optional<double> noise_filter;
};

struct Range {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;
  double at(std::size_t i) const;
};

struct SweepSettings {
  Range alpha1;
  Range alpha2;
  double beta1 = 1.0;
  double beta2 = 1.0;
  std::vector<double> k_norms{1.0};
};

struct KineticSettings {
  std::size_t realizations = 1;
  std::size_t transactions = 1000;  // per realization
  double mean_amount = 1.0;
  double velocity_scale = 0.1;
  std::string input;  // transaction CSV; replaces generated data when set
  std::size_t particles = 0;  // synthetic agents for macro densities
  std::size_t variables = 1;
};

struct CreditSettings {
  double X = 1.0;
};

struct ScenarioConfig {
  Mode mode = Mode::dispersion_sweep;
  std::vector<espace::Interval> bounds;  // empty when the mode has no space
  std::size_t nodes_per_axis = 0;
  espace::Boundary boundary = espace::Boundary::periodic;
  hydro::CouplingParams params;
  double cl0 = 1.0;
  double pc0 = 1.0;
  InitialCondition initial;
  RunSettings run;
  std::optional<SweepSettings> sweep;
  std::optional<KineticSettings> kinetic;
  std::optional<CreditSettings> credit;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string source_dir;  // directory of the scenario file, for relative paths

  espace::EconomicSpace space() const { return espace::EconomicSpace(bounds); }
};

// Throws ConfigError.
ScenarioConfig parse_scenario(std::string_view text);
// Reads and parses; relative file paths inside resolve against the file's
// directory. Throws IoError when unreadable, ConfigError when invalid.
ScenarioConfig load_scenario(const std::string& path);

}  // namespace efield::scenario
