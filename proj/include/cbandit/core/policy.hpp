#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "cbandit/core/indicator_basis.hpp"

namespace cbandit {

class Policy;

struct UniformPolicy {
  int K = 1;
};

// Regressor of kind SumToOne used directly as probabilities.
struct PerArmPolicy {
  Regressor f;
};

// delta/K + (1 - delta) * tilt(a, w)
struct MixturePolicy {
  double delta = 1.0;
  std::shared_ptr<const Policy> tilt;
};

// Point mass on argmax_a f(a, w), lowest index on ties.
struct ArgmaxPolicy {
  Regressor f;
};

class Policy {
 public:
  using Variant = std::variant<UniformPolicy, PerArmPolicy, MixturePolicy, ArgmaxPolicy>;

  Policy() : v_(UniformPolicy{}) {}
  Policy(Variant v);  // NOLINT(google-explicit-constructor)

  static Policy uniform(int K) { return Policy(UniformPolicy{K}); }
  static Policy per_arm(Regressor f) { return Policy(PerArmPolicy{std::move(f)}); }
  static Policy argmax(Regressor f) { return Policy(ArgmaxPolicy{std::move(f)}); }
  static Policy mixture(double delta, Policy tilt);

  int K() const;
  const Variant& variant() const { return v_; }

  double prob(int a, const Context& w) const;
  std::vector<double> probs(const Context& w) const;

 private:
  Variant v_;
};

inline double policy_prob(const Policy& pi, int a, const Context& w) { return pi.prob(a, w); }

int argmax_lowest(const std::vector<double>& v);

/// (1/n) sum_tau sum_a f(a, W_tau) / g(a, W_tau). Throws when g vanishes.
double empirical_is_ratio(const Policy& f, const Policy& g, const std::vector<Context>& contexts);

/// Largest deviation from nonnegativity / unit sum over the points.
double simplex_violation(const Policy& pi, const std::vector<Context>& points);

}  // namespace cbandit
