#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cbandit/oracles/basis.hpp"
#include "cbandit/optim/qp.hpp"

namespace cbandit {

/// sum_{a,g} coef(a,g) f(a, group g) <= b, over the groups of a ClassBasis.
struct GroupConstraint {
  Eigen::MatrixXd coef;  // K x G
  double b = 0.0;
};

struct OracleResult {
  bool feasible = false;
  Regressor f;
  Eigen::MatrixXd values;  // K x G
  double value = 0.0;      // objective (LCCSCO) or grouped residual (LCLSO)
  Eigen::VectorXd x;       // beta variables
  int constraint_rounds = 0;
  int constraints_used = 0;
};

/// Cost-sensitive linear oracle: optimize sum costs(a,g) f(a,g) over the class
/// intersected with the extra constraints. Extra constraints are added lazily
/// (only violated ones enter the LP).
OracleResult lccsco_grouped(const ClassBasis& basis, const Eigen::MatrixXd& costs,
                            const std::vector<GroupConstraint>& extra, Sense sense,
                            const NumericSettings& s = default_settings());

/// Weighted least squares: minimize sum_g weight(g) sum_a (target(a,g) - f(a,g))^2.
OracleResult lclso_grouped(const ClassBasis& basis, const Eigen::MatrixXd& target, const Eigen::VectorXd& weight,
                           const std::vector<GroupConstraint>& extra,
                           const NumericSettings& s = default_settings());

// ---- slot-level interface: slot index = tau * K + a over t contexts ----

/// u.w_f <= b with w_f = (f(a, W_tau)).
struct LinearConstraintSet {
  std::vector<Eigen::VectorXd> u;
  std::vector<double> b;
};

struct SlotOracleResult {
  bool feasible = false;
  Regressor f;
  Eigen::VectorXd fitted;  // K*t slot values
  double value = 0.0;      // objective, or full least-squares residual
};

SlotOracleResult lclso(const std::vector<Context>& contexts, const Eigen::VectorXd& target,
                       const LinearConstraintSet& constraints, const ClassSpec& spec, int K,
                       const NumericSettings& s = default_settings());

SlotOracleResult lccsco(const std::vector<Context>& contexts, const Eigen::VectorXd& costs,
                        const LinearConstraintSet& constraints, const ClassSpec& spec, int K, Sense sense,
                        const NumericSettings& s = default_settings());

}  // namespace cbandit
