#include <doctest.h>

#include <cmath>

#include "cbandit/core/errors.hpp"
#include "cbandit/core/variation.hpp"
#include "cbandit/oracles/erm.hpp"
#include "cbandit/oracles/oracles.hpp"
#include "reference.hpp"

using namespace cbandit;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double a : v) x[i++] = a;
  return x;
}

ClassSpec spec(double M, RegressorKind kind = RegressorKind::SumToOne) {
  ClassSpec s;
  s.M = M;
  s.kind = kind;
  return s;
}

std::vector<Observation> random_history(Rng& rng, int n, int K, std::size_t d) {
  std::vector<Observation> h;
  for (int i = 0; i < n; ++i) {
    Context w(d);
    for (auto& x : w) x = static_cast<double>(rng.below(8)) / 8.0;
    h.push_back({w, static_cast<int>(rng.below(static_cast<std::uint64_t>(K))), rng.uniform() < 0.5 ? 1 : 0,
                 0.2 + 0.8 * rng.uniform()});
  }
  return h;
}

}  // namespace

TEST_SUITE("oracles") {
  TEST_CASE("least-squares oracle examples") {
    const std::vector<Context> one = {{0.5}};
    const auto proj = lclso(one, vec({2, -1}), {}, spec(10), 2);
    REQUIRE(proj.feasible);
    CHECK(proj.fitted[0] == doctest::Approx(1));
    CHECK(proj.fitted[1] == doctest::Approx(0).epsilon(1e-9));

    LinearConstraintSet cut;
    cut.u.push_back(vec({1, 0}));
    cut.b.push_back(0.0);
    const auto forced = lclso(one, vec({5, 0}), cut, spec(10), 2);
    REQUIRE(forced.feasible);
    CHECK(forced.fitted[0] == doctest::Approx(0).epsilon(1e-9));
    CHECK(forced.fitted[1] == doctest::Approx(1));
  }

  TEST_CASE("realizable targets are fitted exactly") {
    Rng rng(43);
    for (int i = 0; i < 10; ++i) {
      const Regressor f0 = ref::random_member(rng, 2, 1, RegressorKind::SumToOne);
      std::vector<Context> ws;
      Eigen::VectorXd target(8);
      for (int t = 0; t < 4; ++t) {
        ws.push_back(ref::random_context(rng, 1));
        for (int a = 0; a < 2; ++a) target[t * 2 + a] = f0.eval(a, ws.back());
      }
      const auto r = lclso(ws, target, {}, spec(10), 2);
      REQUIRE(r.feasible);
      CHECK(r.value <= 1e-12);
    }
  }

  TEST_CASE("cost-sensitive oracle examples") {
    const std::vector<Context> two = {{0.2}, {0.7}};
    const auto flat = lccsco(two, vec({0.3, 0.3, 0.3, 0.3}), {}, spec(10), 2, Sense::Minimize);
    REQUIRE(flat.feasible);
    CHECK(flat.value == doctest::Approx(0.6));

    const std::vector<Context> one = {{0.4}};
    const auto pick = lccsco(one, vec({1, 0}), {}, spec(10), 2, Sense::Minimize);
    REQUIRE(pick.feasible);
    CHECK(pick.value == doctest::Approx(0).epsilon(1e-12));
    CHECK(pick.fitted[0] == doctest::Approx(0).epsilon(1e-12));

    LinearConstraintSet cap;
    cap.u.push_back(vec({0, 1}));
    cap.b.push_back(0.3);
    const auto capped = lccsco(one, vec({1, 0}), cap, spec(10), 2, Sense::Minimize);
    REQUIRE(capped.feasible);
    CHECK(capped.value == doctest::Approx(0.7));

    LinearConstraintSet none;
    none.u = {vec({1, 0}), vec({0, 1})};
    none.b = {0.2, 0.2};
    CHECK(!lccsco(one, vec({1, 0}), none, spec(10), 2, Sense::Minimize).feasible);
    CHECK_THROWS_AS(lccsco(one, vec({-1, 0}), {}, spec(10), 2, Sense::Minimize), InvalidArgument);
  }

  TEST_CASE("cost-sensitive minimum is nonincreasing in the budget") {
    Rng rng(47);
    for (int i = 0; i < 20; ++i) {
      std::vector<Context> ws;
      Eigen::VectorXd costs(2 * 5);
      for (int t = 0; t < 5; ++t) ws.push_back(ref::random_context(rng, 1));
      for (Eigen::Index j = 0; j < costs.size(); ++j) costs[j] = rng.uniform();
      double prev = kInf;
      for (double M : {1.0, 1.5, 2.5, 5.0}) {
        const auto r = lccsco(ws, costs, {}, spec(M), 2, Sense::Minimize);
        REQUIRE(r.feasible);
        CHECK(r.value <= prev + 1e-9);
        prev = r.value;
      }
    }
  }

  TEST_CASE("direct ERM examples") {
    const std::vector<Observation> one = {{{0.5}, 0, 0, 0.5}};
    const auto r = erm_direct(one, spec(1), 2);
    CHECK(r.f.eval(0, {0.5}) == doctest::Approx(0).epsilon(1e-9));
    CHECK(r.objective == doctest::Approx(0).epsilon(1e-9));

    const std::vector<Observation> wins = {{{0.1}, 0, 1, 0.5}, {{0.8}, 1, 1, 0.5}};
    const auto z = erm_direct(wins, spec(1), 2);
    CHECK(z.objective == doctest::Approx(0));
    CHECK(kind_violation(z.f, anchor_grid(z.f).points()) <= 1e-9);

    const std::vector<Observation> cells = {{{0.25}, 0, 0, 0.5}, {{0.75}, 1, 0, 0.5}};
    const auto c = erm_direct(cells, spec(4), 2);
    CHECK(c.objective == doctest::Approx(0).epsilon(1e-9));
    CHECK(c.f.eval(1, {0.25}) == doctest::Approx(1));
    CHECK(c.f.eval(0, {0.75}) == doctest::Approx(1));
  }

  TEST_CASE("hinge ERM examples") {
    const std::vector<Observation> wins = {{{0.3}, 0, 1, 0.5}};
    CHECK(erm_hinge(wins, spec(2, RegressorKind::SumToZero), 2).objective == doctest::Approx(0));

    const std::vector<Observation> one = {{{0.3}, 0, 0, 0.5}};
    const auto r = erm_hinge(one, spec(2, RegressorKind::SumToZero), 2);
    CHECK(r.objective == doctest::Approx(0).epsilon(1e-9));
    CHECK(r.f.eval(0, {0.3}) <= -1 + 1e-9);

    const std::vector<Observation> two = {{{0.3}, 0, 0, 0.5}, {{0.6}, 1, 0, 0.25}};
    const auto zero = erm_hinge(two, spec(0, RegressorKind::SumToZero), 2);
    CHECK(zero.objective == doctest::Approx(1 / 0.5 + 1 / 0.25));
    CHECK(std::abs(zero.f.eval(0, {0.3})) <= 1e-12);
  }

  TEST_CASE("ERM beats random class members and validates its kind") {
    Rng rng(53);
    for (int i = 0; i < 10; ++i) {
      const auto h = random_history(rng, 6, 2, 1);
      const auto d = erm_direct(h, spec(4), 2);
      const auto g = erm_hinge(h, spec(4, RegressorKind::SumToZero), 2);
      const auto grid = anchor_grid(d.f).merged(minimal_grid(std::vector<Context>{}, 1));
      CHECK(kind_violation(d.f, grid.points()) <= 1e-9);
      CHECK(kind_violation(g.f, anchor_grid(g.f).points()) <= 1e-9);
      CHECK(sectional_variation_norm(d.f) <= 4 + 1e-9);
      CHECK(empirical_direct_loss(h, d.f) == doctest::Approx(d.objective).epsilon(1e-9));
      CHECK(empirical_hinge_loss(h, g.f) == doctest::Approx(g.objective).epsilon(1e-9));
      for (int j = 0; j < 100; ++j) {
        const Regressor p = ref::random_member(rng, 2, 1, RegressorKind::SumToOne);
        CHECK(d.objective <= empirical_direct_loss(h, p) + 1e-9);
        const Regressor z = ref::random_member(rng, 2, 1, RegressorKind::SumToZero);
        if (sectional_variation_norm(z) <= 4) CHECK(g.objective <= empirical_hinge_loss(h, z) + 1e-9);
      }
    }
  }

  TEST_CASE("additive structure keeps anchors on the axes") {
    Rng rng(59);
    ClassSpec s = spec(2);
    s.structure = Structure::Additive;
    s.C = 1.5;
    CHECK(s.budget() == doctest::Approx(3.0));
    const auto h = random_history(rng, 6, 2, 2);
    const auto r = erm_direct(h, s, 2);
    for (const auto& arm : r.f.arms())
      for (const auto& a : arm.anchors()) CHECK((a[0] == 0.0 || a[1] == 0.0));
    CHECK(kind_violation(r.f, anchor_grid(r.f).points()) <= 1e-9);
  }

  TEST_CASE("invalid specs and inputs") {
    CHECK_THROWS_AS(validate_spec(spec(-1)), InvalidArgument);
    ClassSpec s = spec(1);
    s.C = 0;
    CHECK_THROWS_AS(validate_spec(s), InvalidArgument);
    CHECK_THROWS_AS(lclso({{0.5}}, vec({1, 0, 0}), {}, spec(1), 2), InvalidArgument);
    const std::vector<Observation> bad = {{{0.5}, 0, 0, 0.0}};
    CHECK_THROWS_AS(erm_direct(bad, spec(1), 2), InvalidArgument);
  }
}
