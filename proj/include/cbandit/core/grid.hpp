#pragma once

#include <cstddef>
#include <vector>

#include "cbandit/core/types.hpp"

namespace cbandit {

// Rectangular grid on [0,1]^d. Knots per dimension are strictly increasing and
// always contain 0 and 1. Points are enumerated with dimension 0 varying
// slowest.
class RectangularGrid {
 public:
  RectangularGrid() = default;
  explicit RectangularGrid(std::vector<std::vector<double>> knots);

  /// The corner grid {0,1}^d.
  static RectangularGrid corners(std::size_t d);

  std::size_t dim() const { return knots_.size(); }
  std::size_t size() const;
  const std::vector<std::vector<double>>& knots() const { return knots_; }
  const std::vector<double>& knots(std::size_t dim) const { return knots_[dim]; }

  Context point(std::size_t flat) const;
  std::vector<Context> points() const;

  bool contains(const Context& w) const;

  /// Union of knots, dimension by dimension.
  RectangularGrid merged(const RectangularGrid& other) const;

  /// Copy with extra knots inserted in one dimension.
  RectangularGrid refined(std::size_t dim, const std::vector<double>& extra) const;

  bool operator==(const RectangularGrid&) const = default;

 private:
  std::vector<std::vector<double>> knots_;
};

/// Knots {0,1} plus every distinct coordinate of the inputs. Empty input gives
/// the corner grid.
RectangularGrid minimal_grid(const std::vector<Context>& points, std::size_t d);

}  // namespace cbandit
