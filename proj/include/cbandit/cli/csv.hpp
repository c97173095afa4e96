#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "cbandit/envsim/record.hpp"

namespace cbandit::cli {

// Per-run schema. Actions are written 1-based; absent optional values are
// empty cells.
inline constexpr const char* kRunHeader =
    "round,action,reward,propensity,delta_t,x_t,v_t,max_is_ratio,cum_regret,noise_cum,expl_cost_cum,"
    "exploit_cost_cum";
// Long format for compare: the run columns prefixed by the run key.
inline constexpr const char* kLongHeader =
    "algorithm,seed,round,action,reward,propensity,delta_t,x_t,v_t,max_is_ratio,cum_regret,noise_cum,"
    "expl_cost_cum,exploit_cost_cum";

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);
std::string format_optional(const std::optional<double>& v);

/// Columns after `round` (no trailing newline).
std::string record_cells(const RoundRecord& r);

void write_run_csv(std::ostream& os, const RunLog& log);
void write_long_rows(std::ostream& os, const std::string& algorithm, std::uint64_t seed, const RunLog& log);

}  // namespace cbandit::cli
