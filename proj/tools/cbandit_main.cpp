#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cbandit/cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"contextual bandit experiments: policy elimination and epsilon-greedy"};
  app.require_subcommand(1);

  std::string run_config;
  std::optional<std::string> run_out;
  std::optional<std::uint64_t> run_seed;
  auto* run = app.add_subcommand("run", "run one configured experiment and write its CSV");
  run->add_option("--config", run_config, "JSON config")->required();
  run->add_option("--out", run_out, "output CSV (overrides the config)");
  run->add_option("--seed", run_seed, "seed (overrides the config)");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("--suite", suite, "svn, grids, ellipsoid, lp, representation, calibration, isratio, schedules, all")
      ->required();

  std::vector<std::string> configs;
  std::string compare_out;
  auto* compare = app.add_subcommand("compare", "run several configs on one environment into a long-format CSV");
  compare->add_option("--config", configs, "JSON configs (at least two)")->required();
  compare->add_option("--out", compare_out, "merged CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*run) return cbandit::cli::cmd_run(run_config, run_out, run_seed, std::cout, std::cerr);
  if (*verify) return cbandit::cli::cmd_verify(suite, std::cout, std::cerr);
  return cbandit::cli::cmd_compare(configs, compare_out, std::cout, std::cerr);
}
