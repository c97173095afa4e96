#include "cbandit/core/indicator_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cbandit/core/errors.hpp"

namespace cbandit {

bool dominates(const Context& w, const Context& x) {
  for (std::size_t l = 0; l < x.size(); ++l)
    if (w[l] < x[l]) return false;
  return true;
}

IndicatorBasisFunction::IndicatorBasisFunction(std::size_t d, std::vector<Context> anchors,
                                               std::vector<double> beta)
    : d_(d), anchors_(std::move(anchors)), beta_(std::move(beta)) {
  if (anchors_.size() != beta_.size()) throw InvalidArgument("anchor and coefficient counts differ");
  for (const auto& x : anchors_) validate_context(x, d_);
  std::vector<std::size_t> order(anchors_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return anchors_[i] < anchors_[j]; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (anchors_[order[i]] == anchors_[order[i - 1]]) throw InvalidArgument("anchors must be distinct");
}

IndicatorBasisFunction IndicatorBasisFunction::constant(std::size_t d, double value) {
  return IndicatorBasisFunction(d, {Context(d, 0.0)}, {value});
}

double IndicatorBasisFunction::eval(const Context& w) const {
  if (w.size() != d_)
    throw InvalidArgument("evaluation point has dimension " + std::to_string(w.size()) +
                          ", function has " + std::to_string(d_));
  double s = 0.0;
  for (std::size_t j = 0; j < beta_.size(); ++j)
    if (dominates(w, anchors_[j])) s += beta_[j];
  return s;
}

IndicatorBasisFunction IndicatorBasisFunction::scaled(double c) const {
  auto b = beta_;
  for (double& x : b) x *= c;
  return IndicatorBasisFunction(d_, anchors_, std::move(b));
}

Regressor::Regressor(RegressorKind kind, std::vector<IndicatorBasisFunction> arms)
    : kind_(kind), arms_(std::move(arms)) {
  if (arms_.empty()) throw InvalidArgument("regressor needs at least one arm");
  for (const auto& f : arms_)
    if (f.dim() != arms_.front().dim()) throw InvalidArgument("arm dimensions differ");
}

std::vector<double> Regressor::values(const Context& w) const {
  std::vector<double> v(arms_.size());
  for (std::size_t a = 0; a < arms_.size(); ++a) v[a] = arms_[a].eval(w);
  return v;
}

Regressor Regressor::uniform(int K, std::size_t d, RegressorKind kind) {
  const double v = kind == RegressorKind::SumToOne ? 1.0 / K : 0.0;
  return Regressor(kind, std::vector<IndicatorBasisFunction>(static_cast<std::size_t>(K),
                                                             IndicatorBasisFunction::constant(d, v)));
}

double kind_violation(const Regressor& f, const std::vector<Context>& points) {
  double worst = 0.0;
  for (const auto& w : points) {
    const auto v = f.values(w);
    double sum = 0.0;
    for (double x : v) {
      sum += x;
      if (f.kind() == RegressorKind::SumToOne) worst = std::max(worst, -x);
    }
    const double target = f.kind() == RegressorKind::SumToOne ? 1.0 : 0.0;
    worst = std::max(worst, std::abs(sum - target));
  }
  return worst;
}

void validate_regressor(const Regressor& f, const std::vector<Context>& points, double tol) {
  const double v = kind_violation(f, points);
  if (v > tol)
    throw InvalidArgument("regressor violates its " +
                          std::string(f.kind() == RegressorKind::SumToOne ? "simplex" : "sum-to-zero") +
                          " constraints by " + std::to_string(v));
}

RectangularGrid anchor_grid(const IndicatorBasisFunction& f) {
  return minimal_grid(f.anchors(), f.dim());
}

RectangularGrid anchor_grid(const Regressor& f) {
  std::vector<Context> pts;
  for (const auto& arm : f.arms()) pts.insert(pts.end(), arm.anchors().begin(), arm.anchors().end());
  return minimal_grid(pts, f.dim());
}

}  // namespace cbandit
