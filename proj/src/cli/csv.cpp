#include "cbandit/cli/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace cbandit::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), r.ptr);
}

std::string format_optional(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string record_cells(const RoundRecord& r) {
  std::string s;
  s += std::to_string(r.obs.action + 1);
  s += ',' + std::to_string(r.obs.reward);
  s += ',' + format_double(r.obs.propensity);
  s += ',' + format_double(r.delta_t);
  s += ',' + format_optional(r.x_t);
  s += ',' + format_optional(r.v_t);
  s += ',' + format_optional(r.max_is_ratio);
  s += ',' + format_double(r.cum_regret);
  s += ',' + format_double(r.noise_cum);
  s += ',' + format_optional(r.expl_cost_cum);
  s += ',' + format_optional(r.exploit_cost_cum);
  return s;
}

void write_run_csv(std::ostream& os, const RunLog& log) {
  os << kRunHeader << '\n';
  for (const auto& r : log) os << r.round << ',' << record_cells(r) << '\n';
}

void write_long_rows(std::ostream& os, const std::string& algorithm, std::uint64_t seed, const RunLog& log) {
  for (const auto& r : log) os << algorithm << ',' << seed << ',' << r.round << ',' << record_cells(r) << '\n';
}

}  // namespace cbandit::cli
