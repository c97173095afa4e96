#include "cbandit/oracles/erm.hpp"

#include <algorithm>

#include "cbandit/core/errors.hpp"
#include "cbandit/oracles/oracles.hpp"

namespace cbandit {

namespace {

struct Grouped {
  ContextGroups groups;
  Eigen::MatrixXd weight;  // K x G: sum of (1 - Y) / g over matching rounds
};

Grouped group_history(const std::vector<Observation>& history, int K) {
  if (history.empty()) throw InvalidArgument("empirical risk minimization needs at least one observation");
  const std::size_t d = history.front().context.size();
  std::vector<Context> ctx;
  ctx.reserve(history.size());
  for (const auto& o : history) {
    validate_observation(o, K, d);
    ctx.push_back(o.context);
  }
  Grouped g{group_contexts(ctx), {}};
  g.weight = Eigen::MatrixXd::Zero(K, static_cast<Eigen::Index>(g.groups.points.size()));
  for (std::size_t tau = 0; tau < history.size(); ++tau) {
    const auto& o = history[tau];
    g.weight(o.action, g.groups.group_of[tau]) += (1.0 - o.reward) / o.propensity;
  }
  return g;
}

}  // namespace

double empirical_direct_loss(const std::vector<Observation>& history, const Regressor& f) {
  double s = 0.0;
  for (const auto& o : history) s += (1.0 - o.reward) / o.propensity * f.eval(o.action, o.context);
  return s;
}

double empirical_hinge_loss(const std::vector<Observation>& history, const Regressor& f) {
  double s = 0.0;
  for (const auto& o : history)
    s += (1.0 - o.reward) / o.propensity * std::max(0.0, 1.0 + f.eval(o.action, o.context));
  return s;
}

ErmResult erm_direct(const std::vector<Observation>& history, const ClassSpec& spec, int K,
                     const NumericSettings& s) {
  if (spec.kind != RegressorKind::SumToOne) throw InvalidArgument("direct ERM needs a sum-to-one class");
  const Grouped g = group_history(history, K);
  const ClassBasis basis(spec, K, history.front().context.size(), g.groups.points);
  const OracleResult r = lccsco_grouped(basis, g.weight, {}, Sense::Minimize, s);
  if (!r.feasible) throw NumericalError("direct ERM linear program is infeasible (budget M too small?)");
  return {r.f, r.value};
}

ErmResult erm_hinge(const std::vector<Observation>& history, const ClassSpec& spec, int K,
                    const NumericSettings& s) {
  if (spec.kind != RegressorKind::SumToZero) throw InvalidArgument("hinge ERM needs a sum-to-zero class");
  const Grouped g = group_history(history, K);
  const ClassBasis basis(spec, K, history.front().context.size(), g.groups.points);
  const int G = basis.num_groups();
  std::vector<std::pair<int, int>> slots;
  for (int a = 0; a < K; ++a)
    for (int j = 0; j < G; ++j)
      if (g.weight(a, j) > 0.0) slots.emplace_back(a, j);
  const int nb = basis.num_vars();
  LinearProgram lp = basis.base_lp(static_cast<int>(slots.size()));
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const auto [a, j] = slots[k];
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(K, G);
    e(a, j) = 1.0;
    Eigen::VectorXd row = Eigen::VectorXd::Zero(lp.num_vars());
    row.head(nb) = basis.lift(e);
    row[nb + static_cast<Eigen::Index>(k)] = -1.0;
    lp.add_row(std::move(row), RowType::Le, -1.0);
    lp.c[nb + static_cast<Eigen::Index>(k)] = g.weight(a, j);
  }
  const LpResult r = solve_lp(lp, s);
  if (r.status != LpStatus::Optimal) throw NumericalError("hinge ERM linear program failed: " + std::string(to_string(r.status)));
  const Eigen::VectorXd x = r.x.head(nb);
  const Eigen::MatrixXd v = basis.group_values(x);
  const double obj = (g.weight.array() * (1.0 + v.array()).max(0.0)).sum();
  return {basis.to_regressor(x), obj};
}

}  // namespace cbandit
