#include "cbandit/core/grid.hpp"

#include <algorithm>
#include <string>

#include "cbandit/core/errors.hpp"

namespace cbandit {

namespace {

void normalize(std::vector<double>& k) {
  k.push_back(0.0);
  k.push_back(1.0);
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
}

}  // namespace

RectangularGrid::RectangularGrid(std::vector<std::vector<double>> knots) : knots_(std::move(knots)) {
  if (knots_.empty()) throw InvalidArgument("grid needs at least one dimension");
  for (const auto& k : knots_) {
    if (k.size() < 2 || k.front() != 0.0 || k.back() != 1.0)
      throw InvalidArgument("grid knots must start at 0 and end at 1");
    for (std::size_t i = 1; i < k.size(); ++i)
      if (!(k[i] > k[i - 1])) throw InvalidArgument("grid knots must be strictly increasing");
  }
}

RectangularGrid RectangularGrid::corners(std::size_t d) {
  return RectangularGrid(std::vector<std::vector<double>>(d, {0.0, 1.0}));
}

std::size_t RectangularGrid::size() const {
  if (knots_.empty()) return 0;
  std::size_t n = 1;
  for (const auto& k : knots_) n *= k.size();
  return n;
}

Context RectangularGrid::point(std::size_t flat) const {
  Context w(dim());
  for (std::size_t l = dim(); l-- > 0;) {
    const std::size_t m = knots_[l].size();
    w[l] = knots_[l][flat % m];
    flat /= m;
  }
  return w;
}

std::vector<Context> RectangularGrid::points() const {
  std::vector<Context> out;
  const std::size_t n = size();
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(point(i));
  return out;
}

bool RectangularGrid::contains(const Context& w) const {
  if (w.size() != dim()) return false;
  for (std::size_t l = 0; l < dim(); ++l)
    if (!std::binary_search(knots_[l].begin(), knots_[l].end(), w[l])) return false;
  return true;
}

RectangularGrid RectangularGrid::merged(const RectangularGrid& other) const {
  if (other.dim() != dim()) throw InvalidArgument("grid dimension mismatch");
  auto k = knots_;
  for (std::size_t l = 0; l < dim(); ++l) {
    k[l].insert(k[l].end(), other.knots_[l].begin(), other.knots_[l].end());
    normalize(k[l]);
  }
  return RectangularGrid(std::move(k));
}

RectangularGrid RectangularGrid::refined(std::size_t dim, const std::vector<double>& extra) const {
  auto k = knots_;
  for (double x : extra) {
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("knot outside [0,1]");
    k.at(dim).push_back(x);
  }
  normalize(k[dim]);
  return RectangularGrid(std::move(k));
}

RectangularGrid minimal_grid(const std::vector<Context>& points, std::size_t d) {
  if (d == 0) throw InvalidArgument("dimension must be positive");
  std::vector<std::vector<double>> k(d);
  for (const auto& w : points) {
    validate_context(w, d);
    for (std::size_t l = 0; l < d; ++l) k[l].push_back(w[l]);
  }
  for (auto& kl : k) normalize(kl);
  return RectangularGrid(std::move(k));
}

}  // namespace cbandit
