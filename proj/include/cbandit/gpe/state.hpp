#pragma once

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <vector>

#include "cbandit/core/types.hpp"
#include "cbandit/oracles/oracles.hpp"

namespace cbandit {

// The candidate set F_t: the base class cut down by one linear elimination
// constraint per past round, R_tau(f) <= b_tau, where
// R_tau(f) = (1/tau) sum_{s <= tau} 1{A_s = a} (1 - Y_s) / (K g_s) f(a, W_s).
class PolicyClassState {
 public:
  PolicyClassState(ClassSpec spec, int K, std::size_t d);

  const ClassSpec& spec() const { return spec_; }
  int K() const { return K_; }
  std::size_t dim() const { return d_; }
  int rounds() const { return static_cast<int>(history_.size()); }
  int num_constraints() const { return static_cast<int>(bounds_.size()); }
  const std::vector<Observation>& history() const { return history_; }
  std::vector<Context> contexts() const;

  void add_observation(const Observation& o);

  /// Basis over the distinct contexts seen so far (rebuilt when one is new).
  const ClassBasis& basis();
  /// Multiplicity of every basis group.
  const Eigen::VectorXd& counts() const { return counts_; }

  /// Elimination constraints in the current group coordinates.
  const std::vector<GroupConstraint>& constraints();

  /// Coefficients (K x G) of R_tau for the current history prefix tau.
  Eigen::MatrixXd risk_coef(int tau) const;
  double bound(int tau) const { return bounds_.at(static_cast<std::size_t>(tau - 1)); }

  /// Appends R_tau(f) <= b for tau = num_constraints() + 1 <= rounds().
  void add_constraint(double b);

  /// Dense u_{t,tau} over the K t slots (slot s K + a), 1/tau folded in.
  Eigen::VectorXd constraint_vector(int tau, int t) const;

  double empirical_risk(const Regressor& f, int tau) const;
  /// Largest R_tau(f) - b_tau over the stored constraints (<= 0 inside).
  double max_violation(const Regressor& f) const;
  bool contains(const Regressor& f, double tol = 1e-9) const { return max_violation(f) <= tol; }

 private:
  int group_index(const Context& w);

  ClassSpec spec_;
  int K_;
  std::size_t d_;
  std::vector<Observation> history_;
  std::vector<int> group_of_;
  std::map<Context, int> group_ids_;
  std::vector<Context> group_points_;
  Eigen::VectorXd counts_;
  Eigen::MatrixXd cum_;                   // K x G running sum of loss weights
  std::vector<Eigen::MatrixXd> coefs_;    // per constraint, K x G at creation
  std::vector<double> bounds_;
  std::unique_ptr<ClassBasis> basis_;
  std::vector<GroupConstraint> cache_;
  int cache_groups_ = -1;
};

}  // namespace cbandit
