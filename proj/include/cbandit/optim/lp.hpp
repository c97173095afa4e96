#pragma once

#include <Eigen/Dense>
#include <limits>
#include <string_view>
#include <vector>

#include "cbandit/optim/settings.hpp"

namespace cbandit {

enum class Sense { Minimize, Maximize };
enum class RowType { Le, Ge, Eq };

struct LinearRow {
  Eigen::VectorXd a;
  RowType type = RowType::Le;
  double b = 0.0;
};

struct LinearProgram {
  explicit LinearProgram(int n = 0);

  int num_vars() const { return static_cast<int>(c.size()); }
  void add_row(Eigen::VectorXd a, RowType type, double b);

  Eigen::VectorXd c;
  Sense sense = Sense::Minimize;
  std::vector<LinearRow> rows;
  Eigen::VectorXd lower;  // defaults to 0
  Eigen::VectorXd upper;  // defaults to +inf
};

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class LpStatus { Optimal, Infeasible, Unbounded };
std::string_view to_string(LpStatus s);

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;
  double value = 0.0;
  // Multipliers of the original rows from the final basis, in the sign
  // convention of the stated sense: value = dual_value at optimality.
  Eigen::VectorXd duals;
  double dual_value = 0.0;
  int iterations = 0;
};

/// Dense two-phase tableau simplex with Bland's rule.
LpResult solve_lp(const LinearProgram& lp, const NumericSettings& s = default_settings());

/// Largest constraint or bound violation of x.
double lp_violation(const LinearProgram& lp, const Eigen::VectorXd& x);

}  // namespace cbandit
