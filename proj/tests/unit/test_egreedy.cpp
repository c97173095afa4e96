#include <doctest.h>

#include <cmath>

#include "cbandit/core/errors.hpp"
#include "cbandit/egreedy/egreedy.hpp"
#include "cbandit/envsim/presets.hpp"
#include "reference.hpp"

using namespace cbandit;

namespace {

Regressor constant_regressor(RegressorKind kind, double a, double b) {
  return Regressor(kind, {IndicatorBasisFunction::constant(1, a), IndicatorBasisFunction::constant(1, b)});
}

Environment constant_env(double m1, double m2) {
  return Environment("const", 1, ContextLaw::FiniteGrid, {{0.25}, {0.75}},
                     {IndicatorBasisFunction::constant(1, m1), IndicatorBasisFunction::constant(1, m2)});
}

EgreedyConfig config(Variant v, int T, std::uint64_t seed) {
  EgreedyConfig cfg;
  cfg.variant = v;
  cfg.T = T;
  cfg.seed = seed;
  cfg.spec.M = 4;
  cfg.spec.kind = v == Variant::Direct ? RegressorKind::SumToOne : RegressorKind::SumToZero;
  return cfg;
}

}  // namespace

TEST_SUITE("egreedy") {
  TEST_CASE("egreedy_delta examples") {
    CHECK(egreedy_delta(8, 2.0) == doctest::Approx(0.25));
    CHECK(egreedy_delta(1, 0.7) == 1.0);
    CHECK(egreedy_delta(27, 0.5) == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(egreedy_delta(0, 0.5), InvalidArgument);
  }

  TEST_CASE("surrogate_loss examples") {
    const Regressor d = constant_regressor(RegressorKind::SumToOne, 0.4, 0.6);
    const Regressor h = constant_regressor(RegressorKind::SumToZero, -2.0, 2.0);
    const Observation lost{{0.3}, 0, 0, 0.5}, won{{0.3}, 0, 1, 0.5};
    CHECK(surrogate_loss(Variant::Direct, d, won) == 0.0);
    CHECK(surrogate_loss(Variant::Hinge, h, won) == 0.0);
    CHECK(surrogate_loss(Variant::Direct, d, lost) == doctest::Approx(0.4));
    CHECK(surrogate_loss(Variant::Hinge, h, lost) == 0.0);
    CHECK(surrogate_loss(Variant::Hinge, h, {{0.3}, 1, 0, 0.25}) == doctest::Approx(3.0 / (2 * 0.25)));
    CHECK_THROWS_AS(surrogate_loss(Variant::Direct, d, {{0.3}, 0, 0, 0.0}), InvalidArgument);
  }

  TEST_CASE("policy_map examples") {
    const Regressor tie = constant_regressor(RegressorKind::SumToZero, 0.0, 0.0);
    const Policy argmax = policy_map(Variant::Hinge, tie);
    CHECK(argmax.prob(0, {0.1}) == 1.0);
    CHECK(argmax.prob(1, {0.9}) == 0.0);

    const Policy u = policy_map(Variant::Direct, Regressor::uniform(2, 1));
    CHECK(u.prob(0, {0.4}) == doctest::Approx(0.5));
    CHECK(u.prob(1, {0.4}) == doctest::Approx(0.5));

    const double c = 0.1;
    const Regressor step(RegressorKind::SumToZero,
                         {IndicatorBasisFunction(1, {{0.0}, {0.5}}, {-c, 1.0}),
                          IndicatorBasisFunction(1, {{0.0}, {0.5}}, {c, -1.0})});
    const Policy s = policy_map(Variant::Hinge, step);
    for (double w : {0.0, 0.2, 0.49}) CHECK(s.prob(1, {w}) == 1.0);
    for (double w : {0.5, 0.7, 1.0}) CHECK(s.prob(0, {w}) == 1.0);

    CHECK_THROWS(policy_map(Variant::Direct, constant_regressor(RegressorKind::SumToOne, 1.5, -0.5)));
    CHECK_THROWS_AS(policy_map(Variant::Direct, tie), InvalidArgument);
  }

  TEST_CASE("hinge risk oracle") {
    const auto sure = hinge_risk_oracle(constant_env(1.0, 0.0));
    CHECK(sure.risk == doctest::Approx(0).epsilon(1e-9));
    for (const auto& x : sure.f_star) {
      CHECK(x[1] <= -1 + 1e-6);
      CHECK(x[0] + x[1] == doctest::Approx(0).epsilon(1e-12));
    }
    const auto even = hinge_risk_oracle(constant_env(0.5, 0.5));
    CHECK(even.risk == doctest::Approx(0.5).epsilon(1e-6));

    const auto env = make_preset("two-cell");
    const auto o = hinge_risk_oracle(env);
    Rng rng(71);
    for (int i = 0; i < 100; ++i)
      CHECK(o.risk <= hinge_risk(env, ref::random_member(rng, 2, 1, RegressorKind::SumToZero)) + 1e-9);
    CHECK(hinge_point_risk({0.2, 0.6}, {0.5, -0.5}) == doctest::Approx(0.5 * 0.8 * 1.5 + 0.5 * 0.4 * 0.5));
  }

  TEST_CASE("first design is uniform and exploitation is nonnegative") {
    const auto env = make_preset("two-cell");
    for (Variant v : {Variant::Direct, Variant::Hinge}) {
      const auto run = run_egreedy(env, config(v, 80, 3));
      REQUIRE(run.records.size() == 80);
      CHECK(run.comparator_value == doctest::Approx(0.8));
      const auto& first = run.records.front();
      CHECK(first.delta_t == 1.0);
      CHECK(first.design_value == doctest::Approx(0.5));
      CHECK(*first.expl_cost_cum == doctest::Approx(0.3));
      CHECK(*first.exploit_cost_cum == 0.0);
      double prev_delta = 2.0, prev_exploit = 0.0;
      for (const auto& r : run.records) {
        CHECK(r.delta_t <= prev_delta);
        prev_delta = r.delta_t;
        CHECK(*r.exploit_cost_cum >= prev_exploit - 1e-12);
        prev_exploit = *r.exploit_cost_cum;
        CHECK(std::abs(*r.expl_cost_cum + *r.exploit_cost_cum - (r.cum_regret - r.noise_cum)) <= 1e-9);
        CHECK(!r.x_t);
        CHECK(!r.v_t);
        CHECK(!r.max_is_ratio);
      }
    }
  }

  TEST_CASE("action-independent rewards carry no exploitation cost") {
    const auto env = make_preset("flat");
    for (Variant v : {Variant::Direct, Variant::Hinge}) {
      const auto run = run_egreedy(env, config(v, 60, 7));
      for (const auto& r : run.records) {
        CHECK(std::abs(*r.exploit_cost_cum) <= 1e-12);
        CHECK(std::abs(*r.expl_cost_cum) <= 1e-12);
      }
    }
  }

  TEST_CASE("runs are deterministic and the comparator can be the class") {
    const auto env = make_preset("two-cell");
    auto cfg = config(Variant::Hinge, 40, 11);
    const auto a = run_egreedy(env, cfg), b = run_egreedy(env, cfg);
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      CHECK(a.records[i].obs.action == b.records[i].obs.action);
      CHECK(a.records[i].cum_regret == b.records[i].cum_regret);
    }
    cfg.compare_to_best_in_class = true;
    cfg.spec.M = 0.5;  // sum-to-one class collapses to uniform
    CHECK(run_egreedy(env, cfg).comparator_value == doctest::Approx(0.5));
    cfg = config(Variant::Direct, 40, 11);
    cfg.refit = RefitCadence::Doubling;
    CHECK(run_egreedy(env, cfg).records.size() == 40);
  }

  TEST_CASE("policy risk scale") {
    const auto env = make_preset("two-cell");
    CHECK(policy_risk(env, Policy::uniform(2)) == doctest::Approx(0.25));
    CHECK(policy_risk(env, optimal_policy(env)) == doctest::Approx(0.1));
  }

  TEST_CASE("config validation") {
    const auto env = make_preset("two-cell");
    auto cfg = config(Variant::Direct, 10, 1);
    cfg.spec.kind = RegressorKind::SumToZero;
    CHECK_THROWS_AS(run_egreedy(env, cfg), InvalidArgument);
    cfg = config(Variant::Hinge, 10, 1);
    cfg.spec.kind = RegressorKind::SumToOne;
    CHECK_THROWS_AS(run_egreedy(env, cfg), InvalidArgument);
    cfg = config(Variant::Direct, 10, 1);
    cfg.p = 0;
    CHECK_THROWS_AS(run_egreedy(env, cfg), InvalidArgument);
    cfg = config(Variant::Direct, 0, 1);
    CHECK_THROWS_AS(run_egreedy(env, cfg), InvalidArgument);
    cfg = config(Variant::Direct, 10, 1);
    cfg.K = 3;
    CHECK_THROWS_AS(run_egreedy(env, cfg), InvalidArgument);
  }
}
