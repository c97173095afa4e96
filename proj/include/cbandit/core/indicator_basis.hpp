#pragma once

#include <cstddef>
#include <vector>

#include "cbandit/core/grid.hpp"
#include "cbandit/core/types.hpp"

namespace cbandit {

/// f(w) = sum_j beta_j 1{w >= x_j}, with >= taken coordinatewise and closed.
class IndicatorBasisFunction {
 public:
  IndicatorBasisFunction() = default;
  IndicatorBasisFunction(std::size_t d, std::vector<Context> anchors, std::vector<double> beta);

  static IndicatorBasisFunction constant(std::size_t d, double value);

  std::size_t dim() const { return d_; }
  std::size_t size() const { return beta_.size(); }
  const std::vector<Context>& anchors() const { return anchors_; }
  const std::vector<double>& beta() const { return beta_; }

  double eval(const Context& w) const;

  IndicatorBasisFunction scaled(double c) const;

 private:
  std::size_t d_ = 0;
  std::vector<Context> anchors_;
  std::vector<double> beta_;
};

inline double eval_indicator(const IndicatorBasisFunction& f, const Context& w) { return f.eval(w); }

/// Coordinatewise w >= x.
bool dominates(const Context& w, const Context& x);

enum class RegressorKind { SumToOne, SumToZero };

/// K indicator-basis functions, one per arm.
class Regressor {
 public:
  Regressor() = default;
  Regressor(RegressorKind kind, std::vector<IndicatorBasisFunction> arms);

  RegressorKind kind() const { return kind_; }
  int K() const { return static_cast<int>(arms_.size()); }
  std::size_t dim() const { return arms_.empty() ? 0 : arms_.front().dim(); }
  const IndicatorBasisFunction& arm(int a) const { return arms_[static_cast<std::size_t>(a)]; }
  const std::vector<IndicatorBasisFunction>& arms() const { return arms_; }

  double eval(int a, const Context& w) const { return arm(a).eval(w); }
  std::vector<double> values(const Context& w) const;

  /// Constant regressor 1/K on every arm (SumToOne) or 0 (SumToZero).
  static Regressor uniform(int K, std::size_t d, RegressorKind kind = RegressorKind::SumToOne);

 private:
  RegressorKind kind_ = RegressorKind::SumToOne;
  std::vector<IndicatorBasisFunction> arms_;
};

/// Largest violation of the regressor's kind constraints over the given
/// points (0 when every point satisfies them exactly).
double kind_violation(const Regressor& f, const std::vector<Context>& points);

/// Throws InvalidArgument when kind_violation exceeds tol.
void validate_regressor(const Regressor& f, const std::vector<Context>& points, double tol = 1e-9);

/// Grid spanned by the anchors of every arm (plus 0 and 1).
RectangularGrid anchor_grid(const Regressor& f);
RectangularGrid anchor_grid(const IndicatorBasisFunction& f);

}  // namespace cbandit
