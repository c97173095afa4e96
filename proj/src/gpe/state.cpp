#include "cbandit/gpe/state.hpp"

#include <algorithm>

#include "cbandit/core/errors.hpp"

namespace cbandit {

PolicyClassState::PolicyClassState(ClassSpec spec, int K, std::size_t d) : spec_(std::move(spec)), K_(K), d_(d) {
  validate_spec(spec_);
  if (spec_.kind != RegressorKind::SumToOne) throw InvalidArgument("policy elimination needs a sum-to-one class");
  cum_ = Eigen::MatrixXd::Zero(K, 0);
}

std::vector<Context> PolicyClassState::contexts() const {
  std::vector<Context> out;
  out.reserve(history_.size());
  for (const auto& o : history_) out.push_back(o.context);
  return out;
}

int PolicyClassState::group_index(const Context& w) {
  auto [it, fresh] = group_ids_.try_emplace(w, static_cast<int>(group_points_.size()));
  if (fresh) {
    group_points_.push_back(w);
    const auto G = static_cast<Eigen::Index>(group_points_.size());
    counts_.conservativeResize(G);
    counts_[G - 1] = 0.0;
    cum_.conservativeResize(K_, G);
    cum_.col(G - 1).setZero();
    basis_.reset();
  }
  return it->second;
}

void PolicyClassState::add_observation(const Observation& o) {
  validate_observation(o, K_, d_);
  const int g = group_index(o.context);
  history_.push_back(o);
  group_of_.push_back(g);
  counts_[g] += 1.0;
  cum_(o.action, g) += (1.0 - o.reward) / (K_ * o.propensity);
}

const ClassBasis& PolicyClassState::basis() {
  if (!basis_) basis_ = std::make_unique<ClassBasis>(spec_, K_, d_, group_points_);
  return *basis_;
}

const std::vector<GroupConstraint>& PolicyClassState::constraints() {
  const int G = static_cast<int>(group_points_.size());
  if (cache_groups_ != G) {
    cache_.clear();
    cache_groups_ = G;
  }
  while (cache_.size() < coefs_.size()) {
    const auto& c = coefs_[cache_.size()];
    Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(K_, G);
    padded.leftCols(c.cols()) = c;
    cache_.push_back({std::move(padded), bounds_[cache_.size()]});
  }
  return cache_;
}

Eigen::MatrixXd PolicyClassState::risk_coef(int tau) const {
  if (tau < 1 || tau > rounds()) throw InvalidArgument("risk prefix out of range");
  if (tau == rounds()) return cum_ / tau;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(K_, static_cast<Eigen::Index>(group_points_.size()));
  for (int s = 0; s < tau; ++s) {
    const auto& o = history_[static_cast<std::size_t>(s)];
    c(o.action, group_of_[static_cast<std::size_t>(s)]) += (1.0 - o.reward) / (K_ * o.propensity);
  }
  return c / tau;
}

void PolicyClassState::add_constraint(double b) {
  const int tau = num_constraints() + 1;
  if (tau > rounds()) throw InvalidArgument("constraint for a round that has not been observed");
  coefs_.push_back(risk_coef(tau));
  bounds_.push_back(b);
}

Eigen::VectorXd PolicyClassState::constraint_vector(int tau, int t) const {
  if (tau < 1 || t > rounds() || tau > t) throw InvalidArgument("constraint vector index out of range");
  Eigen::VectorXd u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(t) * K_);
  for (int s = 0; s < tau; ++s) {
    const auto& o = history_[static_cast<std::size_t>(s)];
    u[static_cast<Eigen::Index>(s) * K_ + o.action] = (1.0 - o.reward) / (K_ * o.propensity) / tau;
  }
  return u;
}

double PolicyClassState::empirical_risk(const Regressor& f, int tau) const {
  if (tau < 1 || tau > rounds()) throw InvalidArgument("risk prefix out of range");
  double s = 0.0;
  for (int i = 0; i < tau; ++i) {
    const auto& o = history_[static_cast<std::size_t>(i)];
    s += (1.0 - o.reward) / (K_ * o.propensity) * f.eval(o.action, o.context);
  }
  return s / tau;
}

double PolicyClassState::max_violation(const Regressor& f) const {
  if (coefs_.empty()) return -kInf;
  Eigen::MatrixXd v(K_, static_cast<Eigen::Index>(group_points_.size()));
  for (std::size_t g = 0; g < group_points_.size(); ++g)
    for (int a = 0; a < K_; ++a) v(a, static_cast<Eigen::Index>(g)) = f.eval(a, group_points_[g]);
  double worst = -kInf;
  for (std::size_t i = 0; i < coefs_.size(); ++i) {
    const auto& c = coefs_[i];
    worst = std::max(worst, c.cwiseProduct(v.leftCols(c.cols())).sum() - bounds_[i]);
  }
  return worst;
}

}  // namespace cbandit
