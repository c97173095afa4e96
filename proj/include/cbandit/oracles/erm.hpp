#pragma once

#include <vector>

#include "cbandit/core/types.hpp"
#include "cbandit/oracles/basis.hpp"

namespace cbandit {

struct ErmResult {
  Regressor f;
  double objective = 0.0;  // sum_tau (1 - Y_tau) / g_tau * phi(f(A_tau, W_tau))
};

/// Identity-loss empirical risk minimizer over a sum-to-one class.
ErmResult erm_direct(const std::vector<Observation>& history, const ClassSpec& spec, int K,
                     const NumericSettings& s = default_settings());

/// Hinge-loss empirical risk minimizer over a sum-to-zero class.
ErmResult erm_hinge(const std::vector<Observation>& history, const ClassSpec& spec, int K,
                    const NumericSettings& s = default_settings());

double empirical_direct_loss(const std::vector<Observation>& history, const Regressor& f);
double empirical_hinge_loss(const std::vector<Observation>& history, const Regressor& f);

}  // namespace cbandit
