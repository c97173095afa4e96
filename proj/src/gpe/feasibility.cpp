#include "cbandit/gpe/feasibility.hpp"

#include <cmath>

#include "cbandit/core/errors.hpp"
#include "cbandit/simd/kernels.hpp"

namespace cbandit {

ExplorationFeasibility::ExplorationFeasibility(const ClassBasis& basis, const Eigen::VectorXd& counts,
                                               const std::vector<GroupConstraint>& constraints, double delta, int t,
                                               double Delta, const NumericSettings& s)
    : basis_(basis), counts_(counts), constraints_(constraints), delta_(delta), t_(t), Delta_(Delta), settings_(s) {
  if (counts.size() != basis.num_groups()) throw InvalidArgument("group counts do not match basis");
  if (t < 2) throw InvalidArgument("exploration search needs t >= 2");
  sqrt_counts_.resize(dim());
  for (int a = 0; a < basis.K(); ++a)
    sqrt_counts_.segment(a * basis.num_groups(), basis.num_groups()) = counts.array().sqrt().matrix();
}

Eigen::VectorXd ExplorationFeasibility::to_reduced(const Eigen::MatrixXd& values) const {
  Eigen::VectorXd y(dim());
  const int G = basis_.num_groups();
  for (int a = 0; a < basis_.K(); ++a) y.segment(a * G, G) = values.row(a).transpose();
  return y.cwiseProduct(sqrt_counts_);
}

Eigen::MatrixXd ExplorationFeasibility::from_reduced(const Eigen::VectorXd& y) const {
  const int G = basis_.num_groups();
  const Eigen::VectorXd v = y.cwiseQuotient(sqrt_counts_);
  Eigen::MatrixXd out(basis_.K(), G);
  for (int a = 0; a < basis_.K(); ++a) out.row(a) = v.segment(a * G, G).transpose();
  return out;
}

SeparationResult ExplorationFeasibility::sep_C(const Eigen::VectorXd& y) {
  ++calls_C_;
  projection_ = lclso_grouped(basis_, from_reduced(y), counts_, constraints_, settings_);
  if (!projection_.feasible) throw NumericalError("candidate set is empty (least-squares projection infeasible)");
  const Eigen::VectorXd proj = to_reduced(projection_.values);
  Eigen::VectorXd a = y - proj;
  const double dist = a.norm();
  if (dist <= Delta_) return SeparationResult::in();
  // The candidate set lies in {z : a.z <= a.proj}; its Delta-neighborhood in
  // {z : a.z <= a.proj + Delta |a|}.
  const double c = a.dot(proj) + Delta_ * dist;
  return SeparationResult::cut(std::move(a), c);
}

double ExplorationFeasibility::h(const Eigen::VectorXd& y, const Eigen::MatrixXd& z, Eigen::VectorXd* grad) const {
  const int K = basis_.K(), G = basis_.num_groups();
  const Eigen::MatrixXd v = from_reduced(y);
  Eigen::VectorXd w(dim()), zz(dim()), weight(dim()), g(dim());
  for (int a = 0; a < K; ++a) {
    w.segment(a * G, G) = v.row(a).transpose();
    zz.segment(a * G, G) = z.row(a).transpose();
    weight.segment(a * G, G) = counts_ / (t_ - 1.0);
  }
  const double val = simd::kernels().is_ratio_sum(weight.data(), zz.data(), w.data(), delta_ / K, 1.0 - delta_,
                                                  grad ? g.data() : nullptr, static_cast<std::size_t>(dim()));
  if (grad) *grad = g.cwiseQuotient(sqrt_counts_);  // chain rule for y = sqrt(n) v
  return val;
}

SeparationResult ExplorationFeasibility::sep_L(const Eigen::VectorXd& y) {
  ++calls_L_;
  const int K = basis_.K();
  const double floor = delta_ / K, slope = 1.0 - delta_;
  // Lower-clip to keep denominators positive. Since the gradient is <= 0
  // componentwise, a gradient cut taken at the clipped point still separates y.
  Eigen::VectorXd yc = y;
  bool clipped = false;
  int worst = -1;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (!(floor + slope * y[i] / sqrt_counts_[i] > 0.0)) {
      if (worst < 0 || y[i] / sqrt_counts_[i] < y[worst] / sqrt_counts_[worst]) worst = static_cast<int>(i);
      clipped = true;
      yc[i] = 0.0;
    }
  }
  const Eigen::MatrixXd vc = from_reduced(yc);
  const Eigen::MatrixXd costs =
      (1.0 / (t_ - 1.0)) * (floor + slope * vc.array()).inverse().matrix() * counts_.asDiagonal();
  const OracleResult z = lccsco_grouped(basis_, costs, constraints_, Sense::Maximize, settings_);
  if (!z.feasible) throw NumericalError("candidate set is empty (ratio maximization infeasible)");
  Eigen::VectorXd grad;
  last_h_ = h(yc, z.values, &grad);
  if (last_h_ <= threshold()) {
    if (!clipped) return SeparationResult::in();
    // Outside the domain of h: every target point has a positive denominator there.
    Eigen::VectorXd a = Eigen::VectorXd::Zero(dim());
    a[worst] = -1.0;
    return SeparationResult::cut(std::move(a), sqrt_counts_[worst] * floor / slope);
  }
  const double c = grad.dot(yc) + threshold() - last_h_;
  return SeparationResult::cut(std::move(grad), c);
}

SeparationResult ExplorationFeasibility::operator()(const Eigen::VectorXd& y) {
  SeparationResult r = sep_C(y);
  if (!r.inside) return r;
  return sep_L(y);
}

}  // namespace cbandit
