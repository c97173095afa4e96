#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "cbandit/core/grid.hpp"
#include "cbandit/core/indicator_basis.hpp"
#include "cbandit/optim/lp.hpp"

namespace cbandit {

enum class Structure { Full, Additive };

struct ClassSpec {
  std::optional<RectangularGrid> grid;  // merged into the minimal grid of the data
  double M = 1.0;                       // per-arm variation budget
  double C = 1.0;                       // coefficient bound of the additive model
  RegressorKind kind = RegressorKind::SumToOne;
  Structure structure = Structure::Full;

  /// l1 budget on each arm's coefficients.
  double budget() const { return structure == Structure::Additive ? C * M : M; }
};

void validate_spec(const ClassSpec& spec);

/// Distinct contexts and the group index of every input position.
struct ContextGroups {
  std::vector<Context> points;
  std::vector<int> group_of;
  Eigen::VectorXd counts;
};

ContextGroups group_contexts(const std::vector<Context>& contexts);

/// Indicator basis of a class instance. Decision variables are the split
/// coefficients beta+ (first K*m entries) and beta- (next K*m), all >= 0.
/// Evaluation points ("groups") are the distinct contexts the oracles see.
class ClassBasis {
 public:
  ClassBasis(const ClassSpec& spec, int K, std::size_t d, std::vector<Context> group_points);

  const ClassSpec& spec() const { return spec_; }
  int K() const { return K_; }
  std::size_t dim() const { return d_; }
  int num_anchors() const { return static_cast<int>(anchors_.size()); }
  int num_groups() const { return static_cast<int>(groups_.size()); }
  int num_vars() const { return 2 * K_ * num_anchors(); }
  int var(int a, int j, bool minus) const { return (minus ? K_ * num_anchors() : 0) + a * num_anchors() + j; }

  const RectangularGrid& grid() const { return grid_; }
  const std::vector<Context>& anchors() const { return anchors_; }
  const std::vector<Context>& group_points() const { return groups_; }
  const Eigen::MatrixXd& group_dominance() const { return group_dom_; }  // G x m
  const Eigen::MatrixXd& grid_dominance() const { return grid_dom_; }    // P x m

  /// Beta-space vector v with v.x = sum_{a,g} coef(a,g) f(a, group g).
  Eigen::VectorXd lift(const Eigen::MatrixXd& coef) const;

  /// Class constraints (kind rows at every grid point, per-arm budget,
  /// beta >= 0) on num_vars() + extra_vars variables.
  LinearProgram base_lp(int extra_vars = 0) const;

  Regressor to_regressor(const Eigen::VectorXd& x) const;
  /// K x G matrix of f(a, group g).
  Eigen::MatrixXd group_values(const Eigen::VectorXd& x) const;

 private:
  ClassSpec spec_;
  int K_;
  std::size_t d_;
  RectangularGrid grid_;
  std::vector<Context> anchors_;
  std::vector<Context> groups_;
  Eigen::MatrixXd group_dom_;
  Eigen::MatrixXd grid_dom_;
};

}  // namespace cbandit
