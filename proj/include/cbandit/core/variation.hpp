#pragma once

#include "cbandit/core/grid.hpp"
#include "cbandit/core/indicator_basis.hpp"

namespace cbandit {

/// |f(0)| + sum over anchors away from the origin of |beta_j|. For
/// indicator-basis functions this is the sectional variation norm.
double sectional_variation_norm(const IndicatorBasisFunction& f);

/// Max over arms.
double sectional_variation_norm(const Regressor& f);

/// Sum over the cells of the split of |alternating corner sum of f|.
double vitali_variation_bruteforce(const IndicatorBasisFunction& f, const RectangularGrid& split);

/// Sum over nonempty coordinate subsets s of the Vitali variation of the
/// section of f obtained by setting the coordinates outside s to 0, each on
/// the projection of the split. Equals the Vitali variation in d = 1.
double hk_variation_bruteforce(const IndicatorBasisFunction& f, const RectangularGrid& split);

}  // namespace cbandit
