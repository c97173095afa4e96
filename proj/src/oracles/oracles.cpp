#include "cbandit/oracles/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>
#include <string>

#include "cbandit/core/errors.hpp"

namespace cbandit {

namespace {

double constraint_slack(const GroupConstraint& c, const Eigen::MatrixXd& values) {
  return c.coef.cwiseProduct(values).sum() - c.b;
}

// Adds the most violated extra constraints not yet in the problem (at most
// kMaxAdd per round). The elimination constraints are nearly parallel, so only
// a handful ever bind; adding all violated ones bloats the tableau.
constexpr int kMaxAdd = 4;

template <class AddRow>
int add_violated(const ClassBasis& basis, const std::vector<GroupConstraint>& extra, const Eigen::MatrixXd& values,
                 std::vector<bool>& used, double tol, AddRow&& add_row) {
  std::vector<std::pair<double, std::size_t>> viol;
  for (std::size_t i = 0; i < extra.size(); ++i) {
    if (used[i]) continue;
    if (extra[i].coef.rows() != basis.K() || extra[i].coef.cols() != basis.num_groups())
      throw InvalidArgument("extra constraint has wrong shape");
    const double scale = 1.0 + std::abs(extra[i].b);
    const double v = constraint_slack(extra[i], values) / scale;
    if (v > tol) viol.emplace_back(v, i);
  }
  const auto take = std::min<std::size_t>(viol.size(), kMaxAdd);
  std::partial_sort(viol.begin(), viol.begin() + static_cast<long>(take), viol.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; k < take; ++k) {
    const std::size_t i = viol[k].second;
    used[i] = true;
    add_row(basis.lift(extra[i].coef), extra[i].b);
  }
  return static_cast<int>(take);
}

}  // namespace

OracleResult lccsco_grouped(const ClassBasis& basis, const Eigen::MatrixXd& costs,
                            const std::vector<GroupConstraint>& extra, Sense sense, const NumericSettings& s) {
  LinearProgram lp = basis.base_lp();
  lp.c = basis.lift(costs);
  lp.sense = sense;
  std::vector<bool> used(extra.size(), false);
  OracleResult out;
  while (true) {
    ++out.constraint_rounds;
    const LpResult r = solve_lp(lp, s);
    if (r.status == LpStatus::Infeasible) return out;
    if (r.status == LpStatus::Unbounded) throw NumericalError("cost-sensitive oracle LP is unbounded");
    const Eigen::MatrixXd values = basis.group_values(r.x);
    const int added = add_violated(basis, extra, values, used, s.lp_feas_tol,
                                   [&](Eigen::VectorXd row, double b) { lp.add_row(std::move(row), RowType::Le, b); });
    out.constraints_used += added;
    if (added == 0) {
      out.feasible = true;
      out.x = r.x;
      out.values = values;
      out.value = costs.cwiseProduct(values).sum();
      out.f = basis.to_regressor(r.x);
      return out;
    }
  }
}

OracleResult lclso_grouped(const ClassBasis& basis, const Eigen::MatrixXd& target, const Eigen::VectorXd& weight,
                           const std::vector<GroupConstraint>& extra, const NumericSettings& s) {
  const int K = basis.K(), G = basis.num_groups(), m = basis.num_anchors();
  if (target.rows() != K || target.cols() != G || weight.size() != G)
    throw InvalidArgument("least-squares target must be K x G with G weights");
  const LinearProgram base = basis.base_lp();
  QuadraticProgram qp(basis.num_vars());
  qp.rows = base.rows;
  qp.lower.setZero();
  qp.D = Eigen::MatrixXd::Zero(K * G, basis.num_vars());
  qp.target.resize(K * G);
  for (int a = 0; a < K; ++a)
    for (int g = 0; g < G; ++g) {
      const double sw = std::sqrt(std::max(0.0, weight[g]));
      const int row = a * G + g;
      qp.D.block(row, basis.var(a, 0, false), 1, m) = sw * basis.group_dominance().row(g);
      qp.D.block(row, basis.var(a, 0, true), 1, m) = -sw * basis.group_dominance().row(g);
      qp.target[row] = sw * target(a, g);
    }
  std::vector<bool> used(extra.size(), false);
  OracleResult out;
  while (true) {
    ++out.constraint_rounds;
    const QpResult r = solve_constrained_ls(qp, s);
    if (r.status == QpStatus::Infeasible) return out;
    const Eigen::MatrixXd values = basis.group_values(r.x);
    const int added = add_violated(basis, extra, values, used, s.qp_feas_tol,
                                   [&](Eigen::VectorXd row, double b) { qp.add_row(std::move(row), RowType::Le, b); });
    out.constraints_used += added;
    if (added == 0) {
      out.feasible = true;
      out.x = r.x;
      out.values = values;
      out.value = ((target - values).array().square().rowwise() * weight.transpose().array()).sum();
      out.f = basis.to_regressor(r.x);
      return out;
    }
  }
}

namespace {

struct SlotSetup {
  ContextGroups groups;
  ClassBasis basis;
  std::vector<GroupConstraint> extra;
};

Eigen::MatrixXd aggregate(const ContextGroups& g, const Eigen::VectorXd& slots, int K) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(K, static_cast<Eigen::Index>(g.points.size()));
  for (std::size_t tau = 0; tau < g.group_of.size(); ++tau)
    for (int a = 0; a < K; ++a) out(a, g.group_of[tau]) += slots[static_cast<Eigen::Index>(tau) * K + a];
  return out;
}

SlotSetup setup(const std::vector<Context>& contexts, const Eigen::VectorXd& slots,
                const LinearConstraintSet& cs, const ClassSpec& spec, int K) {
  if (contexts.empty()) throw InvalidArgument("oracle needs at least one context");
  const auto t = static_cast<Eigen::Index>(contexts.size());
  if (slots.size() != t * K) throw InvalidArgument("slot vector must have length K*t");
  if (cs.u.size() != cs.b.size()) throw InvalidArgument("constraint set has mismatched sizes");
  auto groups = group_contexts(contexts);
  ClassBasis basis(spec, K, contexts.front().size(), groups.points);
  std::vector<GroupConstraint> extra;
  for (std::size_t i = 0; i < cs.u.size(); ++i) {
    if (cs.u[i].size() != t * K) throw InvalidArgument("constraint vector must have length K*t");
    extra.push_back({aggregate(groups, cs.u[i], K), cs.b[i]});
  }
  return {std::move(groups), std::move(basis), std::move(extra)};
}

Eigen::VectorXd expand(const ContextGroups& g, const Eigen::MatrixXd& values, int K) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(g.group_of.size()) * K);
  for (std::size_t tau = 0; tau < g.group_of.size(); ++tau)
    for (int a = 0; a < K; ++a) out[static_cast<Eigen::Index>(tau) * K + a] = values(a, g.group_of[tau]);
  return out;
}

}  // namespace

SlotOracleResult lclso(const std::vector<Context>& contexts, const Eigen::VectorXd& target,
                       const LinearConstraintSet& constraints, const ClassSpec& spec, int K, const NumericSettings& s) {
  auto su = setup(contexts, target, constraints, spec, K);
  Eigen::MatrixXd mean = aggregate(su.groups, target, K);
  for (Eigen::Index g = 0; g < mean.cols(); ++g) mean.col(g) /= su.groups.counts[g];
  const OracleResult r = lclso_grouped(su.basis, mean, su.groups.counts, su.extra, s);
  SlotOracleResult out;
  if (!r.feasible) return out;
  out.feasible = true;
  out.f = r.f;
  out.fitted = expand(su.groups, r.values, K);
  out.value = (target - out.fitted).squaredNorm();
  return out;
}

SlotOracleResult lccsco(const std::vector<Context>& contexts, const Eigen::VectorXd& costs,
                        const LinearConstraintSet& constraints, const ClassSpec& spec, int K, Sense sense,
                        const NumericSettings& s) {
  if (sense == Sense::Minimize && (costs.array() < 0.0).any())
    throw InvalidArgument("cost-sensitive oracle needs nonnegative costs when minimizing");
  auto su = setup(contexts, costs, constraints, spec, K);
  const OracleResult r = lccsco_grouped(su.basis, aggregate(su.groups, costs, K), su.extra, sense, s);
  SlotOracleResult out;
  if (!r.feasible) return out;
  out.feasible = true;
  out.f = r.f;
  out.fitted = expand(su.groups, r.values, K);
  out.value = costs.dot(out.fitted);
  return out;
}

}  // namespace cbandit
