#include <doctest.h>

#include <cmath>

#include "cbandit/core/errors.hpp"
#include "cbandit/optim/ellipsoid.hpp"
#include "reference.hpp"

using namespace cbandit;

namespace {

SeparationOracle ball(const Eigen::VectorXd& c, double rho) {
  return [c, rho](const Eigen::VectorXd& w) {
    const Eigen::VectorXd a = w - c;
    if (a.norm() <= rho) return SeparationResult::in();
    return SeparationResult::cut(a, a.dot(c) + rho * a.norm());
  };
}

}  // namespace

TEST_SUITE("ellipsoid") {
  TEST_CASE("cap formula") {
    CHECK(ellipsoid_cap(2, 1.0, 0.1) == static_cast<int>(std::ceil(12 * std::log(10.0))) + 2);
    CHECK(ellipsoid_cap(3, 1.0, 1.0) == 3);
    CHECK_THROWS_AS(ellipsoid_cap(0, 1.0, 0.1), InvalidArgument);
  }

  TEST_CASE("center already inside") {
    const auto r = ellipsoid_find(ball(Eigen::VectorXd::Zero(2), 0.5), 2, 1.0, 0.5);
    CHECK(r.found);
    CHECK(r.calls == 1);
  }

  TEST_CASE("hidden balls are found within the cap") {
    Rng rng(41);
    for (int n : {1, 2, 5, 10, 20})
      for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd c(n);
        for (int i = 0; i < n; ++i) c[i] = 2 * rng.uniform() - 1;
        c *= 0.8 * rng.uniform() / c.norm();
        const auto r = ellipsoid_find(ball(c, 0.1), n, 1.0, 0.1);
        CAPTURE(n);
        REQUIRE(r.found);
        CHECK((r.point - c).norm() <= 0.1 + 1e-12);
        CHECK(r.calls <= ellipsoid_cap(n, 1.0, 0.1));
        // Each cut shrinks log det by at least 1/(2(n+1)).
        if (n > 1) CHECK(r.log_det <= n * std::log(1.0) - (r.calls - 1) / (2.0 * (n + 1)) + 1e-9);
      }
  }

  TEST_CASE("empty target exhausts the cap with central cuts") {
    const int n = 3;
    auto always_out = [](const Eigen::VectorXd& w) {
      Eigen::VectorXd a = Eigen::VectorXd::Zero(w.size());
      a[0] = 1.0;
      return SeparationResult::cut(a, w[0]);
    };
    const auto r = ellipsoid_find(always_out, n, 1.0, 0.1);
    CHECK(!r.found);
    CHECK(r.calls == ellipsoid_cap(n, 1.0, 0.1));
  }

  TEST_CASE("deep cut past the ellipsoid proves emptiness") {
    auto far = [](const Eigen::VectorXd& w) {
      Eigen::VectorXd a = Eigen::VectorXd::Zero(w.size());
      a[0] = 1.0;
      return SeparationResult::cut(a, -2.0);
    };
    const auto r = ellipsoid_find(far, 2, 1.0, 0.1);
    CHECK(!r.found);
    CHECK(r.proven_empty);
  }

  TEST_CASE("malformed oracles are rejected") {
    auto zero = [](const Eigen::VectorXd& w) { return SeparationResult::cut(Eigen::VectorXd::Zero(w.size()), 0.0); };
    CHECK_THROWS_AS(ellipsoid_find(zero, 2, 1.0, 0.1), InvalidArgument);
    auto wrong_side = [](const Eigen::VectorXd& w) {
      Eigen::VectorXd a = Eigen::VectorXd::Ones(w.size());
      return SeparationResult::cut(a, a.dot(w) + 1.0);
    };
    CHECK_THROWS_AS(ellipsoid_find(wrong_side, 2, 1.0, 0.1), InvalidArgument);
  }
}
