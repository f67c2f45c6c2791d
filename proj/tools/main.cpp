// efield: run one scenario file and write its outputs.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "efield/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Economic field laboratory: kinetic aggregation, CL/PC hydrodynamics, bi-wave dispersion"};
  std::string scenario_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::size_t threads = 1;
  bool quiet = false;
  app.add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  app.add_option("--out-dir", out_dir, "Output directory (overrides out_dir)");
  app.add_option("--seed", seed, "64-bit seed (overrides seed)");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--quiet", quiet, "Suppress progress output");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : efield::runner::kExitConfig;
  }

  efield::runner::RunOptions options;
  options.out_dir = out_dir;
  options.seed = seed;
  options.threads = threads;
  options.quiet = quiet;
  const auto result = efield::runner::run_file(scenario_path, options, std::cout);
  if (result.exit_code != efield::runner::kExitOk)
    std::cerr << "efield: " << result.message << '\n';
  return result.exit_code;
}
