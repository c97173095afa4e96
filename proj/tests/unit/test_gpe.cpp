#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "cbandit/core/errors.hpp"
#include "cbandit/core/variation.hpp"
#include "cbandit/envsim/presets.hpp"
#include "cbandit/gpe/gpe.hpp"
#include "cbandit/gpe/schedule.hpp"
#include "reference.hpp"

using namespace cbandit;

namespace {

ClassSpec spec(double M) {
  ClassSpec s;
  s.M = M;
  return s;
}

Regressor member(Rng& rng, double M) {
  for (;;) {
    Regressor f = ref::random_member(rng, 2, 1, RegressorKind::SumToOne);
    if (sectional_variation_norm(f) <= M) return f;
  }
}

GpeConfig config(int T, std::uint64_t seed) {
  GpeConfig cfg;
  cfg.T = T;
  cfg.seed = seed;
  cfg.spec = spec(4);
  cfg.x_scale = 1e-4;
  return cfg;
}

}  // namespace

TEST_SUITE("gpe") {
  TEST_CASE("first round plays uniform") {
    PolicyClassState state(spec(4), 2, 1);
    const auto r = exploration_policy_search(state, 1, 1.0);
    CHECK(r.source == "uniform");
    CHECK(r.tilt.eval(0, {0.3}) == doctest::Approx(0.5));
    CHECK(!r.used_ellipsoid);

    const auto run = run_gpe(make_preset("two-cell"), config(1, 3));
    REQUIRE(run.records.size() == 1);
    CHECK(run.records[0].delta_t == 1.0);
    CHECK(run.records[0].design_value == doctest::Approx(0.5));
    CHECK(!run.records[0].max_is_ratio);
    CHECK(run.records[0].x_t);
  }

  TEST_CASE("single-policy class") {
    // With per-arm budget 1/K the sum-to-one class is the uniform policy alone.
    const auto env = make_preset("two-cell");
    PolicyClassState state(spec(0.5), 2, 1);
    Rng rng(9);
    for (int t = 1; t <= 6; ++t) {
      const auto r = exploration_policy_search(state, t, delta_tau(t, 0.5), {}, default_settings());
      CHECK(r.tilt.eval(0, {0.2}) == doctest::Approx(0.5).epsilon(1e-9));
      CHECK(r.tilt.eval(1, {0.9}) == doctest::Approx(0.5).epsilon(1e-9));
      if (t > 1) CHECK(r.max_is_ratio == doctest::Approx(2.0).epsilon(1e-9));
      state.add_observation(sample_round(env, Policy::uniform(2), rng));
      eliminate(state, t, 0.0);
    }
    CHECK(best_in_class_value(env, spec(0.5)).value == doctest::Approx(0.5));
  }

  TEST_CASE("ellipsoid search certifies its tilt") {
    const auto env = make_preset("two-cell");
    PolicyClassState state(spec(4), 2, 1);
    Rng rng(13);
    for (int t = 1; t <= 12; ++t) {
      const double d = delta_tau(t, 0.5);
      const auto r = exploration_policy_search(state, t, d);
      if (t > 1) {
        CHECK(r.used_ellipsoid);
        CHECK(r.oracle_calls <= r.ellipsoid_cap);
        CHECK(r.max_is_ratio <= 4 + 1e-6);
        CHECK(state.contains(r.tilt, 1e-7));
        CHECK(certified_is_ratio(state, r.tilt, d) == doctest::Approx(r.max_is_ratio));
      }
      state.add_observation(sample_round(env, Policy::mixture(d, Policy::per_arm(r.tilt)), rng));
      eliminate(state, t, 0.05);
    }
    CHECK_THROWS_AS(exploration_policy_search(state, 5, 0.5), InvalidArgument);
  }

  TEST_CASE("elimination examples") {
    Rng rng(17);
    PolicyClassState all_wins(spec(4), 2, 1);
    for (int t = 1; t <= 5; ++t) {
      all_wins.add_observation({{0.125 * t}, t % 2, 1, 0.5});
      const auto e = eliminate(all_wins, t, 0.01);
      CHECK(e.min_risk == doctest::Approx(0).epsilon(1e-12));
      CHECK(e.bound == doctest::Approx(0.01));
    }
    for (int i = 0; i < 50; ++i) CHECK(all_wins.contains(member(rng, 4)));

    PolicyClassState open(spec(4), 2, 1);
    for (int t = 1; t <= 5; ++t) {
      open.add_observation({{0.125 * t}, t % 2, 0, 0.5});
      eliminate(open, t, std::numeric_limits<double>::infinity());
    }
    for (int i = 0; i < 50; ++i) CHECK(open.contains(member(rng, 4)));

    // Arm 1 failed at 0.25: the policy putting its mass there has risk 1,
    // the one avoiding it risk 0.
    PolicyClassState toy(spec(4), 2, 1);
    toy.add_observation({{0.25}, 0, 0, 0.5});
    const auto e = eliminate(toy, 1, 0.5);
    CHECK(e.min_risk == doctest::Approx(0).epsilon(1e-12));
    const Regressor bad(RegressorKind::SumToOne,
                        {IndicatorBasisFunction::constant(1, 1.0), IndicatorBasisFunction::constant(1, 0.0)});
    const Regressor good(RegressorKind::SumToOne,
                         {IndicatorBasisFunction::constant(1, 0.0), IndicatorBasisFunction::constant(1, 1.0)});
    CHECK(toy.empirical_risk(bad, 1) == doctest::Approx(1.0));
    CHECK(!toy.contains(bad));
    CHECK(toy.contains(good));

    CHECK_THROWS_AS(eliminate(toy, 1, 0.5), InvalidArgument);
  }

  TEST_CASE("candidate sets are nested") {
    const auto env = make_preset("two-cell");
    PolicyClassState state(spec(4), 2, 1);
    Rng rng(19), draw(23);
    std::vector<Regressor> pool;
    for (int i = 0; i < 60; ++i) pool.push_back(member(draw, 4));
    std::vector<bool> alive(pool.size(), true);
    for (int t = 1; t <= 40; ++t) {
      state.add_observation(sample_round(env, Policy::uniform(2), rng));
      eliminate(state, t, 0.02);
      CHECK(state.num_constraints() == t);
      for (std::size_t i = 0; i < pool.size(); ++i) {
        const bool in = state.contains(pool[i]);
        if (!alive[i]) CHECK(!in);
        alive[i] = in;
      }
    }
    CHECK(std::count(alive.begin(), alive.end(), false) > 0);
  }

  TEST_CASE("run records") {
    const auto env = make_preset("two-cell");
    auto cfg = config(60, 5);
    const auto run = run_gpe(env, cfg);
    REQUIRE(run.records.size() == 60);
    CHECK(run.comparator_value == doctest::Approx(0.8));
    double cum = 0.0;
    for (const auto& r : run.records) {
      CHECK(r.delta_t == doctest::Approx(delta_tau(r.round, 0.5)));
      const double v = v_tau(0.05, r.delta_t, r.round, 1.0, 0.5, 2);
      CHECK(*r.v_t == doctest::Approx(v));
      CHECK(*r.x_t == doctest::Approx(1e-4 * x_tau(0.05, r.delta_t, v, r.round, 1.0, 0.5)));
      if (r.round > 1) CHECK(*r.max_is_ratio <= 4 + 1e-6);
      CHECK(!r.expl_cost_cum);
      cum += 0.8 - r.obs.reward;
      CHECK(r.cum_regret == doctest::Approx(cum));
    }
    const auto again = run_gpe(env, cfg);
    for (std::size_t i = 0; i < run.records.size(); ++i) {
      CHECK(again.records[i].obs.action == run.records[i].obs.action);
      CHECK(again.records[i].cum_regret == run.records[i].cum_regret);
    }
    cfg.compare_to_optimal = true;
    CHECK(run_gpe(env, cfg).comparator_value == doctest::Approx(0.8));
  }

  TEST_CASE("flat environment regret is a martingale") {
    const auto env = make_preset("flat");
    const int T = 150;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto run = run_gpe(env, config(T, seed));
      CHECK(run.comparator_value == doctest::Approx(0.5));
      CHECK(std::abs(run.records.back().cum_regret) <= 3 * std::sqrt(T * std::log(T)));
    }
  }

  TEST_CASE("blend") {
    Rng rng(29);
    for (int i = 0; i < 20; ++i) {
      const Regressor a = member(rng, 4), b = member(rng, 4);
      const double lam = rng.uniform();
      const Regressor m = blend(a, b, lam);
      for (int j = 0; j < 10; ++j) {
        const Context w = ref::random_context(rng, 1);
        for (int k = 0; k < 2; ++k)
          CHECK(m.eval(k, w) == doctest::Approx(lam * a.eval(k, w) + (1 - lam) * b.eval(k, w)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("config validation") {
    const auto env = make_preset("two-cell");
    auto bad = config(10, 1);
    bad.epsilon = 0;
    CHECK_THROWS_AS(run_gpe(env, bad), InvalidArgument);
    bad = config(10, 1);
    bad.p = 1.0;
    CHECK_THROWS_AS(run_gpe(env, bad), InvalidArgument);
    bad = config(10, 1);
    bad.spec.kind = RegressorKind::SumToZero;
    CHECK_THROWS_AS(run_gpe(env, bad), InvalidArgument);
    bad = config(10, 1);
    bad.K = 3;
    CHECK_THROWS_AS(run_gpe(env, bad), InvalidArgument);
    bad = config(0, 1);
    CHECK_THROWS_AS(run_gpe(env, bad), InvalidArgument);
  }
}
