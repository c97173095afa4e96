#include "cbandit/core/variation.hpp"

#include <cmath>
#include <functional>

#include "cbandit/core/errors.hpp"

namespace cbandit {

double sectional_variation_norm(const IndicatorBasisFunction& f) {
  const Context origin(f.dim(), 0.0);
  double s = std::abs(f.eval(origin));
  for (std::size_t j = 0; j < f.size(); ++j)
    if (f.anchors()[j] != origin) s += std::abs(f.beta()[j]);
  return s;
}

double sectional_variation_norm(const Regressor& f) {
  double m = 0.0;
  for (const auto& arm : f.arms()) m = std::max(m, sectional_variation_norm(arm));
  return m;
}

namespace {

// Vitali variation of g over the product of the given knot lists.
double vitali(const std::function<double(const Context&)>& g,
              const std::vector<std::vector<double>>& knots) {
  const std::size_t d = knots.size();
  std::vector<std::size_t> cells(d);
  std::size_t ncells = 1;
  for (std::size_t l = 0; l < d; ++l) {
    cells[l] = knots[l].size() - 1;
    ncells *= cells[l];
  }
  const std::size_t ncorners = std::size_t{1} << d;
  double total = 0.0;
  std::vector<std::size_t> idx(d);
  Context corner(d);
  for (std::size_t c = 0; c < ncells; ++c) {
    std::size_t rem = c;
    for (std::size_t l = d; l-- > 0;) {
      idx[l] = rem % cells[l];
      rem /= cells[l];
    }
    double q = 0.0;
    for (std::size_t m = 0; m < ncorners; ++m) {
      int lower = 0;
      for (std::size_t l = 0; l < d; ++l) {
        const bool up = (m >> l) & 1U;
        corner[l] = knots[l][idx[l] + (up ? 1 : 0)];
        lower += up ? 0 : 1;
      }
      q += (lower % 2 == 0 ? 1.0 : -1.0) * g(corner);
    }
    total += std::abs(q);
  }
  return total;
}

}  // namespace

double vitali_variation_bruteforce(const IndicatorBasisFunction& f, const RectangularGrid& split) {
  if (split.dim() != f.dim()) throw InvalidArgument("split dimension mismatch");
  return vitali([&](const Context& w) { return f.eval(w); }, split.knots());
}

double hk_variation_bruteforce(const IndicatorBasisFunction& f, const RectangularGrid& split) {
  const std::size_t d = f.dim();
  if (split.dim() != d) throw InvalidArgument("split dimension mismatch");
  double total = 0.0;
  for (std::size_t s = 1; s < (std::size_t{1} << d); ++s) {
    std::vector<std::size_t> dims;
    std::vector<std::vector<double>> knots;
    for (std::size_t l = 0; l < d; ++l)
      if ((s >> l) & 1U) {
        dims.push_back(l);
        knots.push_back(split.knots(l));
      }
    Context full(d, 0.0);
    total += vitali(
        [&](const Context& ws) {
          for (std::size_t i = 0; i < dims.size(); ++i) full[dims[i]] = ws[i];
          return f.eval(full);
        },
        knots);
  }
  return total;
}

}  // namespace cbandit
