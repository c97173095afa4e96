#include "cbandit/oracles/basis.hpp"

#include <cmath>
#include <map>

#include "cbandit/core/errors.hpp"

namespace cbandit {

void validate_spec(const ClassSpec& spec) {
  if (!(spec.M >= 0.0) || !std::isfinite(spec.M)) throw InvalidArgument("class budget M must be finite and >= 0");
  if (!(spec.C > 0.0) || !std::isfinite(spec.C)) throw InvalidArgument("class coefficient bound C must be > 0");
}

ContextGroups group_contexts(const std::vector<Context>& contexts) {
  ContextGroups g;
  std::map<Context, int> index;
  g.group_of.reserve(contexts.size());
  std::vector<double> counts;
  for (const auto& w : contexts) {
    auto [it, fresh] = index.try_emplace(w, static_cast<int>(g.points.size()));
    if (fresh) {
      g.points.push_back(w);
      counts.push_back(0.0);
    }
    counts[static_cast<std::size_t>(it->second)] += 1.0;
    g.group_of.push_back(it->second);
  }
  g.counts = Eigen::Map<Eigen::VectorXd>(counts.data(), static_cast<Eigen::Index>(counts.size()));
  return g;
}

namespace {

Eigen::MatrixXd dominance(const std::vector<Context>& pts, const std::vector<Context>& anchors) {
  Eigen::MatrixXd D(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(anchors.size()));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < anchors.size(); ++j)
      D(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = dominates(pts[i], anchors[j]) ? 1.0 : 0.0;
  return D;
}

}  // namespace

ClassBasis::ClassBasis(const ClassSpec& spec, int K, std::size_t d, std::vector<Context> group_points)
    : spec_(spec), K_(K), d_(d), groups_(std::move(group_points)) {
  validate_spec(spec);
  if (K < 1) throw InvalidArgument("class needs K >= 1");
  std::vector<Context> seeds = groups_;
  seeds.emplace_back(d, 0.0);
  grid_ = minimal_grid(seeds, d);
  if (spec.grid) grid_ = grid_.merged(*spec.grid);

  if (spec.structure == Structure::Full) {
    anchors_ = grid_.points();
  } else {
    // Origin intercept plus univariate steps along each axis.
    anchors_.emplace_back(d, 0.0);
    for (std::size_t l = 0; l < d; ++l)
      for (double x : grid_.knots(l)) {
        if (x == 0.0) continue;
        Context p(d, 0.0);
        p[l] = x;
        anchors_.push_back(std::move(p));
      }
  }
  group_dom_ = dominance(groups_, anchors_);
  grid_dom_ = dominance(grid_.points(), anchors_);
}

Eigen::VectorXd ClassBasis::lift(const Eigen::MatrixXd& coef) const {
  if (coef.rows() != K_ || coef.cols() != num_groups()) throw InvalidArgument("coefficient matrix must be K x G");
  const int m = num_anchors();
  Eigen::VectorXd v(num_vars());
  for (int a = 0; a < K_; ++a) {
    const Eigen::VectorXd r = group_dom_.transpose() * coef.row(a).transpose();
    v.segment(var(a, 0, false), m) = r;
    v.segment(var(a, 0, true), m) = -r;
  }
  return v;
}

LinearProgram ClassBasis::base_lp(int extra_vars) const {
  const int nb = num_vars();
  const int m = num_anchors();
  LinearProgram lp(nb + extra_vars);
  const Eigen::Index P = grid_dom_.rows();
  for (Eigen::Index p = 0; p < P; ++p) {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(nb + extra_vars);
    for (int a = 0; a < K_; ++a) {
      Eigen::VectorXd row = Eigen::VectorXd::Zero(nb + extra_vars);
      row.segment(var(a, 0, false), m) = grid_dom_.row(p).transpose();
      row.segment(var(a, 0, true), m) = -grid_dom_.row(p).transpose();
      sum += row;
      if (spec_.kind == RegressorKind::SumToOne) lp.add_row(std::move(row), RowType::Ge, 0.0);
    }
    lp.add_row(std::move(sum), RowType::Eq, spec_.kind == RegressorKind::SumToOne ? 1.0 : 0.0);
  }
  for (int a = 0; a < K_; ++a) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(nb + extra_vars);
    row.segment(var(a, 0, false), m).setOnes();
    row.segment(var(a, 0, true), m).setOnes();
    lp.add_row(std::move(row), RowType::Le, spec_.budget());
  }
  return lp;
}

Regressor ClassBasis::to_regressor(const Eigen::VectorXd& x) const {
  const int m = num_anchors();
  std::vector<IndicatorBasisFunction> arms;
  for (int a = 0; a < K_; ++a) {
    std::vector<Context> anc;
    std::vector<double> beta;
    for (int j = 0; j < m; ++j) {
      const double b = x[var(a, j, false)] - x[var(a, j, true)];
      if (std::abs(b) > 1e-14) {
        anc.push_back(anchors_[static_cast<std::size_t>(j)]);
        beta.push_back(b);
      }
    }
    arms.emplace_back(d_, std::move(anc), std::move(beta));
  }
  return Regressor(spec_.kind, std::move(arms));
}

Eigen::MatrixXd ClassBasis::group_values(const Eigen::VectorXd& x) const {
  const int m = num_anchors();
  Eigen::MatrixXd v(K_, num_groups());
  for (int a = 0; a < K_; ++a) {
    const Eigen::VectorXd beta = x.segment(var(a, 0, false), m) - x.segment(var(a, 0, true), m);
    v.row(a) = (group_dom_ * beta).transpose();
  }
  return v;
}

}  // namespace cbandit
