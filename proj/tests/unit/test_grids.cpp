#include <doctest.h>

#include <set>

#include "cbandit/core/errors.hpp"
#include "cbandit/core/grid.hpp"
#include "reference.hpp"

using namespace cbandit;

using Knots = std::vector<double>;

TEST_SUITE("grids") {
  TEST_CASE("minimal grid examples") {
    const auto g1 = minimal_grid({{0.3}, {0.7}}, 1);
    CHECK(g1.knots(0) == Knots{0, 0.3, 0.7, 1});

    const auto g2 = minimal_grid({{0.2, 0.7}, {0.5, 0.3}}, 2);
    CHECK(g2.knots(0) == Knots{0, 0.2, 0.5, 1});
    CHECK(g2.knots(1) == Knots{0, 0.3, 0.7, 1});
    CHECK(g2.size() == 16);
    CHECK(g2.points().size() == 16);

    CHECK(minimal_grid({{0.5}, {0.5}}, 1).knots(0) == Knots{0, 0.5, 1});
    CHECK(minimal_grid({}, 3) == RectangularGrid::corners(3));
    CHECK(RectangularGrid::corners(3).size() == 8);
    // Endpoints in the data do not duplicate knots.
    CHECK(minimal_grid({{0.0}, {1.0}}, 1).knots(0) == Knots{0, 1});
  }

  TEST_CASE("grid invariants are enforced") {
    CHECK_THROWS_AS(RectangularGrid({{0.2, 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(RectangularGrid({{0.0, 0.6, 0.4, 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(RectangularGrid({{0.0, 0.5, 0.5, 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(RectangularGrid(std::vector<std::vector<double>>{}), InvalidArgument);
    CHECK_THROWS_AS(minimal_grid({{1.2}}, 1), InvalidArgument);
  }

  TEST_CASE("random minimal grids contain their points and nothing extra") {
    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
      const std::size_t d = 1 + rng.below(3);
      std::vector<Context> pts;
      const int n = static_cast<int>(rng.below(6));
      for (int j = 0; j < n; ++j) {
        Context w(d);
        // Coarse lattice so duplicates occur.
        for (auto& x : w) x = static_cast<double>(rng.below(5)) / 4.0;
        pts.push_back(w);
      }
      const auto g = minimal_grid(pts, d);
      for (const auto& w : pts) CHECK(g.contains(w));
      for (std::size_t l = 0; l < d; ++l) {
        std::set<double> expect = {0.0, 1.0};
        for (const auto& w : pts) expect.insert(w[l]);
        CHECK(Knots(expect.begin(), expect.end()) == g.knots(l));
      }
      // Flat enumeration is a bijection with dimension 0 slowest.
      const auto all = g.points();
      CHECK(std::set<Context>(all.begin(), all.end()).size() == g.size());
      CHECK(all.front() == Context(d, 0.0));
      CHECK(all.back() == Context(d, 1.0));
      if (d > 1) CHECK(all[1][0] == 0.0);
    }
  }

  TEST_CASE("merge and refine") {
    const RectangularGrid a({{0, 0.3, 1}, {0, 1}}), b({{0, 0.6, 1}, {0, 0.2, 1}});
    const auto m = a.merged(b);
    CHECK(m.knots(0) == Knots{0, 0.3, 0.6, 1});
    CHECK(m.knots(1) == Knots{0, 0.2, 1});
    CHECK(m == b.merged(a));
    const auto r = a.refined(1, {0.5, 0.25});
    CHECK(r.knots(1) == Knots{0, 0.25, 0.5, 1});
    CHECK(r.knots(0) == a.knots(0));
    CHECK(!a.contains({0.5, 0.0}));
    CHECK(a.contains({0.3, 1.0}));
    CHECK_THROWS_AS(a.merged(RectangularGrid::corners(1)), InvalidArgument);
  }
}
