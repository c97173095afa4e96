#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cbandit/optim/lp.hpp"

namespace cbandit {

/// minimize ||target - D x||^2 subject to linear rows and variable bounds.
/// An empty D means the identity.
struct QuadraticProgram {
  explicit QuadraticProgram(int n = 0);

  int num_vars() const { return static_cast<int>(lower.size()); }
  void add_row(Eigen::VectorXd a, RowType type, double b);

  Eigen::MatrixXd D;
  Eigen::VectorXd target;
  std::vector<LinearRow> rows;
  Eigen::VectorXd lower;  // defaults to -inf
  Eigen::VectorXd upper;  // defaults to +inf
};

enum class QpStatus { Optimal, Infeasible };

struct QpResult {
  QpStatus status = QpStatus::Infeasible;
  Eigen::VectorXd x;
  double residual = 0.0;  // ||target - D x||^2
  int iterations = 0;
  // Working set at termination as indices into the lowered constraint list
  // (rows first, then finite lower bounds, then finite upper bounds) and the
  // matching multipliers (>= 0 for inequalities).
  std::vector<int> active;
  Eigen::VectorXd multipliers;
};

/// Primal active-set method warm-started at an LP phase-I point.
QpResult solve_constrained_ls(const QuadraticProgram& qp, const NumericSettings& s = default_settings());

}  // namespace cbandit
