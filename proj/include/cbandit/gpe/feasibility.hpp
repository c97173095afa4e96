#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cbandit/oracles/oracles.hpp"
#include "cbandit/optim/ellipsoid.hpp"

namespace cbandit {

// The exploration-design search as a convex feasibility problem. Evaluation
// vectors of class members are constant on repeated contexts, so the search
// runs in the isometric coordinates y(a,g) = sqrt(n_g) f(a, group g) of that
// subspace (dimension K G instead of K (t-1)); Euclidean distances and the
// ratio h are unchanged by the reduction.
class ExplorationFeasibility {
 public:
  ExplorationFeasibility(const ClassBasis& basis, const Eigen::VectorXd& counts,
                         const std::vector<GroupConstraint>& constraints, double delta, int t, double Delta,
                         const NumericSettings& s = default_settings());

  int dim() const { return basis_.K() * basis_.num_groups(); }
  double radius() const { return Delta_; }
  double threshold() const { return 5.0 * basis_.K() / 3.0; }

  Eigen::VectorXd to_reduced(const Eigen::MatrixXd& values) const;
  Eigen::MatrixXd from_reduced(const Eigen::VectorXd& y) const;

  /// Membership in the Delta-neighborhood of the candidate evaluation set.
  SeparationResult sep_C(const Eigen::VectorXd& y);
  /// Membership in {w : max_z h(w, z) <= 5K/3}.
  SeparationResult sep_L(const Eigen::VectorXd& y);
  /// sep_C, then sep_L.
  SeparationResult operator()(const Eigen::VectorXd& y);

  /// h(y, z) and its gradient in reduced coordinates; z is K x G.
  double h(const Eigen::VectorXd& y, const Eigen::MatrixXd& z, Eigen::VectorXd* grad = nullptr) const;

  /// Projection computed by the latest sep_C call.
  const OracleResult& last_projection() const { return projection_; }
  double last_h() const { return last_h_; }
  int calls_C() const { return calls_C_; }
  int calls_L() const { return calls_L_; }

 private:
  const ClassBasis& basis_;
  Eigen::VectorXd counts_;
  Eigen::VectorXd sqrt_counts_;  // per reduced coordinate (a-major)
  const std::vector<GroupConstraint>& constraints_;
  double delta_;
  int t_;
  double Delta_;
  NumericSettings settings_;
  OracleResult projection_;
  double last_h_ = 0.0;
  int calls_C_ = 0;
  int calls_L_ = 0;
};

}  // namespace cbandit
