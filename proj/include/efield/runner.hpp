#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "efield/scenario.hpp"

namespace efield::runner {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBlowUp = 3;
inline constexpr int kExitIo = 4;

struct RunOptions {
  std::optional<std::string> out_dir;  // overrides the scenario's out_dir
  std::optional<std::uint64_t> seed;   // overrides the scenario's seed
  std::size_t threads = 1;
  bool quiet = false;
};

struct RunResult {
  int exit_code = kExitOk;
  std::string message;             // diagnostic on failure
  std::vector<std::string> files;  // written, relative to out_dir
};

// Executes one scenario and writes metadata.json, the mode's CSVs and, for
// modes that compare closed forms, discrepancy.json. Never throws: failures
// map to exit codes (2 config, 3 blow-up, 4 I/O).
RunResult run(const scenario::ScenarioConfig& config, const RunOptions& options,
              std::ostream& log);

// Loads a scenario file and runs it.
RunResult run_file(const std::string& path, const RunOptions& options, std::ostream& log);

}  // namespace efield::runner
