#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cbandit/egreedy/egreedy.hpp"
#include "cbandit/envsim/environment.hpp"
#include "cbandit/gpe/gpe.hpp"

namespace cbandit::cli {

enum class Algorithm { Gpe, EgreedyDirect, EgreedyHinge };

std::string algorithm_name(Algorithm a);

struct RunConfig {
  Algorithm algorithm = Algorithm::Gpe;
  std::string preset = "two-cell";
  ContextLaw law = ContextLaw::FiniteGrid;
  GpeConfig gpe;
  EgreedyConfig egreedy;
  std::vector<std::uint64_t> seeds{1};  // run uses the first; compare runs all
  std::optional<std::string> out;
};

/// Strict: unknown keys, wrong types and out-of-range values throw ConfigError
/// with the offending key in the message. Syntax errors name the last key
/// before the error position.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

/// Sets the seed on whichever algorithm config is active.
void apply_seed(RunConfig& cfg, std::uint64_t seed);

}  // namespace cbandit::cli
