#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cbandit/core/policy.hpp"
#include "cbandit/envsim/rng.hpp"
#include "cbandit/oracles/basis.hpp"

namespace cbandit {

enum class ContextLaw { FiniteGrid, UniformCube };

// Bernoulli-reward environment with mean mu(a, w) given per arm as an
// indicator-basis function.
class Environment {
 public:
  Environment(std::string name, std::size_t d, ContextLaw law, std::vector<Context> support,
              std::vector<IndicatorBasisFunction> mu);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return d_; }
  int K() const { return static_cast<int>(mu_.size()); }
  ContextLaw law() const { return law_; }
  bool finite() const { return law_ == ContextLaw::FiniteGrid; }
  /// Support points of the finite law, each with probability 1/size.
  const std::vector<Context>& support() const { return support_; }

  double mu(int a, const Context& w) const { return mu_[static_cast<std::size_t>(a)].eval(w); }
  const std::vector<IndicatorBasisFunction>& mean_functions() const { return mu_; }

  Context sample_context(Rng& rng) const;

 private:
  std::string name_;
  std::size_t d_;
  ContextLaw law_;
  std::vector<Context> support_;
  std::vector<IndicatorBasisFunction> mu_;
};

Observation sample_round(const Environment& env, const Policy& g, Rng& rng);

struct ValueEstimate {
  double value = 0.0;
  double std_error = 0.0;  // 0 for exact values
};

/// Exact on finite laws; Monte Carlo with n draws otherwise.
ValueEstimate policy_value(const Environment& env, const Policy& pi, std::size_t mc_draws = 1000000,
                           std::uint64_t mc_seed = 0x5eed);

/// Value of the pointwise argmax-mu policy (best measurable policy).
double optimal_value(const Environment& env);
Policy optimal_policy(const Environment& env);

struct BestInClass {
  double value = 0.0;
  Policy policy;
  Regressor f;
};

/// Exact maximizer of the policy value over a sum-to-one class (finite laws).
BestInClass best_in_class_value(const Environment& env, const ClassSpec& spec);

}  // namespace cbandit
