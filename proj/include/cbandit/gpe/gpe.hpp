#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cbandit/envsim/environment.hpp"
#include "cbandit/envsim/record.hpp"
#include "cbandit/gpe/state.hpp"

namespace cbandit {

struct GpeConfig {
  double epsilon = 0.05;
  double p = 0.5;
  double c = 1.0;
  int K = 2;
  int T = 100;
  ClassSpec spec;
  // Multiplies the elimination width x_t. 1 is the schedule as derived; its
  // constants make every width exceed the whole risk range at desk-scale
  // horizons, so experiments that need elimination to bite set this lower.
  double x_scale = 1.0;
  // Re-run the search only at t = 2^k, keeping the previous design while it
  // stays feasible and certified.
  bool doubling_research = false;
  // Try a few cheap candidates (ERM minimizer, blends with uniform, previous
  // design, uniform) before falling back to the ellipsoid search.
  bool probe_candidates = true;
  // Regret against the best measurable policy instead of the best class member.
  bool compare_to_optimal = false;
  std::uint64_t seed = 1;
  NumericSettings settings;
};

void validate_config(const GpeConfig& cfg);

struct SearchResult {
  Regressor tilt;
  double max_is_ratio = 0.0;  // lccsco(max)-certified
  int oracle_calls = 0;       // separation-oracle calls of the ellipsoid
  int ellipsoid_cap = 0;
  bool used_ellipsoid = false;
  std::string source;
};

/// max over F_t of (1/(t-1)) sum_{tau<t} sum_a f(a, W_tau) / g(a, W_tau) for the
/// design g = delta Uniform + (1 - delta) tilt.
double certified_is_ratio(PolicyClassState& state, const Regressor& tilt, double delta,
                          const NumericSettings& s = default_settings());

/// Finds a tilt in F_t whose mixed design keeps the certified ratio <= 2K.
/// `candidates` are probed first when non-empty. Uses the ellipsoid search
/// otherwise. Throws NumericalError when the search fails or the certificate
/// exceeds 2K.
SearchResult exploration_policy_search(PolicyClassState& state, int t, double delta_t,
                                       const std::vector<Regressor>& candidates = {},
                                       const NumericSettings& s = default_settings());

struct EliminationResult {
  double min_risk = 0.0;
  Regressor argmin;
  double bound = 0.0;
};

/// min R_t over F_t, then append R_t(f) <= min + x_t.
EliminationResult eliminate(PolicyClassState& state, int t, double x_t, const NumericSettings& s = default_settings());

struct GpeRun {
  RunLog records;
  double comparator_value = 0.0;
  Regressor comparator;  // best class member
  double x_scale = 1.0;
};

GpeRun run_gpe(const Environment& env, const GpeConfig& cfg);

/// lambda a + (1 - lambda) b as indicator-basis functions (anchors merged).
Regressor blend(const Regressor& a, const Regressor& b, double lambda);

}  // namespace cbandit
