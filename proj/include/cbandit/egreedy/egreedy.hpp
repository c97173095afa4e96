#pragma once

#include <cstdint>
#include <vector>

#include "cbandit/envsim/environment.hpp"
#include "cbandit/envsim/record.hpp"
#include "cbandit/oracles/erm.hpp"

namespace cbandit {

enum class Variant { Direct, Hinge };
enum class RefitCadence { EveryRound, Doubling };

struct EgreedyConfig {
  Variant variant = Variant::Direct;
  double p = 0.5;
  int K = 2;
  int T = 100;
  ClassSpec spec;
  RefitCadence refit = RefitCadence::EveryRound;
  bool compare_to_best_in_class = false;
  std::uint64_t seed = 1;
  NumericSettings settings;
};

void validate_config(const EgreedyConfig& cfg);

/// t^-(1/3 max p/(p+1))
double egreedy_delta(int t, double p);

/// (1/(K propensity)) phi(f(A, W)) (1 - Y)
double surrogate_loss(Variant v, const Regressor& f, const Observation& obs);

/// Direct: the regressor as probabilities (validated on its anchor grid).
/// Hinge: argmax with lowest-index ties.
Policy policy_map(Variant v, const Regressor& f);

/// Pointwise minimizer of sum_a (1/K)(1 - mu(a,w)) max(0, 1 + x_a) over
/// sum_a x_a = 0, per support point, by a 0.01 grid search over [-K, K]^(K-1)
/// (the last coordinate is implied) and golden-section refinement.
struct HingeOracle {
  std::vector<std::vector<double>> f_star;  // per support point, K values
  double risk = 0.0;                        // expected hinge risk of f_star
};
HingeOracle hinge_risk_oracle(const Environment& env);

/// sum_w P(w) sum_a (1/K)(1 - mu(a,w)) max(0, 1 + f(a,w)) on finite laws.
double hinge_risk(const Environment& env, const Regressor& f);
/// Pointwise version for a single point.
double hinge_point_risk(const std::vector<double>& mu, const std::vector<double>& x);

/// Loss-scale risk R(pi) = (1/K)(1 - V(pi)).
double policy_risk(const Environment& env, const Policy& pi);

struct EgreedyRun {
  RunLog records;
  double comparator_value = 0.0;
};

EgreedyRun run_egreedy(const Environment& env, const EgreedyConfig& cfg);

}  // namespace cbandit
