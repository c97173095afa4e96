#pragma once

#include <optional>
#include <vector>

#include "cbandit/core/types.hpp"

namespace cbandit {

// One bandit round. Optional fields are written as empty CSV cells.
struct RoundRecord {
  int round = 0;
  Observation obs;
  double delta_t = 1.0;
  std::optional<double> x_t;           // applied elimination width
  std::optional<double> v_t;
  std::optional<double> max_is_ratio;  // certified over the current candidate set
  // Regret is measured in value units against the comparator value V*:
  // cum_regret = sum (V* - Y), noise_cum = sum (V(g_t) - Y).
  double cum_regret = 0.0;
  double noise_cum = 0.0;
  std::optional<double> expl_cost_cum;
  std::optional<double> exploit_cost_cum;

  // Diagnostics, not written to CSV.
  double design_value = 0.0;
  int oracle_calls = 0;
  bool used_ellipsoid = false;
  bool comparator_retained = true;
};

using RunLog = std::vector<RoundRecord>;

}  // namespace cbandit
