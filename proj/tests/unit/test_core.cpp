#include <doctest.h>

#include <cmath>

#include "cbandit/core/errors.hpp"
#include "cbandit/core/indicator_basis.hpp"
#include "cbandit/core/policy.hpp"
#include "cbandit/core/types.hpp"
#include "reference.hpp"

using namespace cbandit;

namespace {

IndicatorBasisFunction two_anchor() { return IndicatorBasisFunction(1, {{0.0}, {0.5}}, {0.2, 0.3}); }

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("indicator basis evaluation") {
    CHECK(two_anchor().eval({0.7}) == doctest::Approx(0.5));
    CHECK(two_anchor().eval({0.4}) == doctest::Approx(0.2));
    // Closed comparison: the anchor itself is dominated.
    CHECK(two_anchor().eval({0.5}) == doctest::Approx(0.5));
    const IndicatorBasisFunction f(2, {{0.0, 0.0}, {0.5, 0.5}}, {1.0, -1.0});
    CHECK(f.eval({0.6, 0.4}) == doctest::Approx(1.0));
    CHECK(f.eval({0.6, 0.6}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(two_anchor().eval({0.1, 0.2}), InvalidArgument);
    CHECK_THROWS_AS(IndicatorBasisFunction(1, {{0.5}, {0.5}}, {1.0, 2.0}), InvalidArgument);
    CHECK_THROWS_AS(IndicatorBasisFunction(1, {{0.5}}, {1.0, 2.0}), InvalidArgument);
  }

  TEST_CASE("evaluation is linear in the coefficients") {
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
      const Regressor f = ref::random_member(rng, 2, 2, RegressorKind::SumToZero, 4);
      const double c = 4 * rng.uniform() - 2;
      const Context w = ref::random_context(rng, 2);
      CHECK(f.arm(0).scaled(c).eval(w) == doctest::Approx(c * f.arm(0).eval(w)).epsilon(1e-12));
    }
  }

  TEST_CASE("policy probabilities") {
    CHECK(Policy::uniform(4).prob(2, {0.3}) == doctest::Approx(0.25));
    const Policy m = Policy::mixture(0.5, Policy::uniform(2));
    CHECK(m.prob(0, {0.9}) == doctest::Approx(0.5));
    CHECK(m.prob(1, {0.1}) == doctest::Approx(0.5));
    const Regressor tie(RegressorKind::SumToZero,
                        {IndicatorBasisFunction::constant(1, 0.0), IndicatorBasisFunction::constant(1, 0.0)});
    CHECK(Policy::argmax(tie).prob(0, {0.4}) == 1.0);
    CHECK(Policy::argmax(tie).prob(1, {0.4}) == 0.0);
    CHECK(argmax_lowest({0.2, 0.7, 0.7}) == 1);
  }

  TEST_CASE("probabilities sum to one for every policy variant") {
    Rng rng(5);
    for (int i = 0; i < 40; ++i) {
      const int K = 2 + static_cast<int>(rng.below(3));
      const Regressor p = ref::random_member(rng, K, 2, RegressorKind::SumToOne);
      const Regressor z = ref::random_member(rng, K, 2, RegressorKind::SumToZero);
      for (const Policy& pi : {Policy::uniform(K), Policy::per_arm(p), Policy::argmax(z),
                               Policy::mixture(rng.uniform(), Policy::per_arm(p))}) {
        const Context w = ref::random_context(rng, 2);
        const auto pr = pi.probs(w);
        double s = 0;
        for (double x : pr) {
          CHECK(x >= -1e-12);
          s += x;
        }
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("mixture probability formula") {
    Rng rng(8);
    const Regressor f = ref::random_member(rng, 3, 1, RegressorKind::SumToOne);
    const Policy m = Policy::mixture(0.3, Policy::per_arm(f));
    for (double w : {0.1, 0.5, 0.9})
      for (int a = 0; a < 3; ++a) CHECK(m.prob(a, {w}) == doctest::Approx(0.1 + 0.7 * f.eval(a, {w})));
  }

  TEST_CASE("empirical IS ratio examples") {
    Rng rng(11);
    std::vector<Context> ws;
    for (int i = 0; i < 30; ++i) ws.push_back(ref::random_context(rng, 1));
    const Regressor f = ref::random_member(rng, 3, 1, RegressorKind::SumToOne);
    CHECK(empirical_is_ratio(Policy::per_arm(f), Policy::uniform(3), ws) == doctest::Approx(3.0).epsilon(1e-12));

    // f = g: one per arm.
    const Policy g = Policy::mixture(0.4, Policy::per_arm(f));
    CHECK(empirical_is_ratio(g, g, {ws[0]}) == doctest::Approx(3.0));

    // Point mass on arm 1 against the half-uniform mixture: 1 / (1/4 + 1/2).
    const Regressor point(RegressorKind::SumToOne,
                          {IndicatorBasisFunction::constant(1, 1.0), IndicatorBasisFunction::constant(1, 0.0)});
    const double r = empirical_is_ratio(Policy::per_arm(point), Policy::mixture(0.5, Policy::per_arm(point)), {{0.3}});
    CHECK(r == doctest::Approx(4.0 / 3.0).epsilon(1e-14));

    CHECK_THROWS_AS(empirical_is_ratio(Policy::uniform(2), Policy::per_arm(point), {{0.3}}), InvalidArgument);
    CHECK_THROWS_AS(empirical_is_ratio(Policy::uniform(2), Policy::uniform(2), {}), InvalidArgument);
  }

  TEST_CASE("simplex constraints on the grid extend off the grid") {
    Rng rng(13);
    for (int i = 0; i < 10; ++i) {
      const std::size_t d = 1 + rng.below(3);
      const Regressor f = ref::random_member(rng, 3, d, RegressorKind::SumToOne, 4);
      REQUIRE(kind_violation(f, anchor_grid(f).points()) <= 1e-12);
      std::vector<Context> probes;
      for (int j = 0; j < 10000; ++j) probes.push_back(ref::random_context(rng, d));
      CHECK(simplex_violation(Policy::per_arm(f), probes) <= 1e-12);
    }
  }

  TEST_CASE("kind validation") {
    const Regressor bad(RegressorKind::SumToOne,
                        {IndicatorBasisFunction::constant(1, 0.7), IndicatorBasisFunction::constant(1, 0.7)});
    CHECK(kind_violation(bad, {{0.5}}) == doctest::Approx(0.4));
    CHECK_THROWS_AS(validate_regressor(bad, {{0.5}}), InvalidArgument);
    CHECK_NOTHROW(validate_regressor(Regressor::uniform(2, 1), {{0.5}}));
    CHECK(Regressor::uniform(3, 2, RegressorKind::SumToZero).eval(1, {0.2, 0.2}) == 0.0);
  }

  TEST_CASE("observation and context validation") {
    CHECK_THROWS_AS(validate_context({0.5, 1.5}, 2), InvalidArgument);
    CHECK_THROWS_AS(validate_context({0.5}, 2), InvalidArgument);
    CHECK_NOTHROW(validate_context({0.0, 1.0}, 2));
    Observation o{{0.5}, 1, 1, 0.5};
    CHECK_NOTHROW(validate_observation(o, 2, 1));
    o.action = 2;
    CHECK_THROWS_AS(validate_observation(o, 2, 1), InvalidArgument);
    o.action = 0;
    o.reward = 2;
    CHECK_THROWS_AS(validate_observation(o, 2, 1), InvalidArgument);
    o.reward = 0;
    o.propensity = 0.0;
    CHECK_THROWS_AS(validate_observation(o, 2, 1), InvalidArgument);
  }
}
