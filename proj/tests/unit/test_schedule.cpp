#include <doctest.h>

#include <cmath>
#include <limits>

#include "cbandit/core/errors.hpp"
#include "cbandit/envsim/rng.hpp"
#include "cbandit/gpe/schedule.hpp"
#include "reference.hpp"

using namespace cbandit;

TEST_SUITE("schedule") {
  TEST_CASE("delta_tau examples") {
    CHECK(delta_tau(4, 0.5) == doctest::Approx(0.5));
    CHECK(delta_tau(1, 0.5) == 1.0);
    CHECK(delta_tau(1, 3.0) == 1.0);
    CHECK(delta_tau(16, 2.5) == doctest::Approx(std::pow(16.0, -0.2)));
    CHECK(delta_tau(16, 2.0) == doctest::Approx(0.5));
  }

  TEST_CASE("constants") {
    const auto k = schedule_constants(1.0, 0.5);
    CHECK(k.c1 == doctest::Approx(254));
    CHECK(k.c1_prime == doctest::Approx(256.0 / 3.0));
    CHECK(k.c2 == 37);
    CHECK(k.c3 == doctest::Approx(3 * std::log(2.0)));
    CHECK(k.c4 == 3);
    CHECK(k.c5 == 2);
    CHECK(k.c6 == 2);
    CHECK(k.c7 == 5);
    const auto q = schedule_constants(4.0, 0.5);
    CHECK(q.c1 == doctest::Approx(2 * 254));
    CHECK_THROWS_AS(schedule_constants(1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(schedule_constants(1.0, 2.0), InvalidArgument);
    for (double p : {0.3, 0.5, 1.5, 2.5, 3.0}) {
      CAPTURE(p);
      const auto s = schedule_constants(2.0, p);
      CHECK(s.c1 == doctest::Approx(static_cast<double>(ref::c1(2.0, p))).epsilon(1e-12));
      CHECK(s.c1_prime == doctest::Approx(static_cast<double>(ref::c1p(2.0, p))).epsilon(1e-12));
    }
  }

  TEST_CASE("v_tau and x_tau hand substitutions") {
    const double l4 = std::log(4.0);
    const double v = 4 + 256.0 / 3.0 + 32 * std::sqrt(l4) + 16 * std::log(2.0) + 16 * l4;
    CHECK(v_tau(0.5, 1.0, 1, 1.0, 0.5, 2) == doctest::Approx(v).epsilon(1e-13));
    CHECK(confidence_log(0.5, 1) == doctest::Approx(l4));

    const double x = 2 * (254 + 37 * std::sqrt(l4) + 3 * std::log(2.0) + 3 * l4 + 2 * std::sqrt(l4) + 2 * l4);
    CHECK(x_tau(0.5, 1.0, 1.0, 1, 1.0, 0.5) == doctest::Approx(x).epsilon(1e-13));
    CHECK(x_tau(0.5, 1.0, 1.0, 1, 1.0, 0.5) ==
          doctest::Approx(2 * (a_tau(0.5, 1.0, 1.0, 1, 1.0, 0.5) + b_tau(0.5, 1.0, 1.0, 1))));

    // Only the non-sqrt(v) part of b survives at v = 0.
    for (int tau : {1, 7, 100}) {
      const double d = 0.3;
      CHECK(x_tau(0.1, d, 0.0, tau, 1.0, 0.5) ==
            doctest::Approx(2 * (2 / (d * tau)) * std::log(tau * (tau + 1.0) / 0.1)).epsilon(1e-13));
    }
  }

  TEST_CASE("v_tau tends to 2K and decreases past tau = 2") {
    CHECK(v_tau(0.05, 1.0, 100000000, 1.0, 0.5, 3) == doctest::Approx(6.0).epsilon(1e-2));
    for (double p : {0.5, 1.5, 3.0}) {
      double prev = v_tau(0.05, 0.7, 2, 1.0, p, 2);
      for (int tau = 3; tau <= 10000; ++tau) {
        const double v = v_tau(0.05, 0.7, tau, 1.0, p, 2);
        CHECK(v < prev);
        prev = v;
      }
    }
  }

  TEST_CASE("random tuples match the second evaluation") {
    Rng rng(61);
    for (int i = 0; i < 300; ++i) {
      const double eps = 0.01 + 0.98 * rng.uniform();
      const double delta = 0.01 + 0.99 * rng.uniform();
      const int tau = 1 + static_cast<int>(rng.below(5000));
      const double c = 0.1 + 3 * rng.uniform();
      double p = 0.1 + 3 * rng.uniform();
      if (std::abs(p - 1) < 1e-3 || std::abs(p - 2) < 1e-3) p += 0.01;
      const int K = 2 + static_cast<int>(rng.below(4));
      const double v = v_tau(eps, delta, tau, c, p, K);
      CHECK(v == doctest::Approx(static_cast<double>(ref::v_tau(eps, delta, tau, c, p, K))).epsilon(1e-12));
      CHECK(x_tau(eps, delta, v, tau, c, p) ==
            doctest::Approx(static_cast<double>(ref::x_tau(eps, delta, v, tau, c, p))).epsilon(1e-12));
    }
  }

  TEST_CASE("xi examples") {
    CHECK(xi(0.1, 0.5, 4, 4) == doctest::Approx(0.8));
    CHECK(xi(0.0, 0.5, 4, 4) == 0.0);
    CHECK(xi(0.04, 0.5, 3, 7) == doctest::Approx(2 * xi(0.02, 0.5, 3, 7)));
    bool violated = false;
    xi(0.3, 0.5, 2, 5, &violated);
    CHECK(violated);
    violated = false;
    xi(0.1, 0.5, 2, 5, &violated);
    CHECK(!violated);
  }

  TEST_CASE("search radius solves xi = K/3") {
    for (int K : {2, 3, 5})
      for (int t : {2, 10, 500}) {
        const double d = delta_tau(t, 0.5);
        const double r = search_radius(d, K, t);
        CHECK(xi(r, d, K, t - 1) == doctest::Approx(K / 3.0));
        CHECK(r == doctest::Approx(K / 6.0 * d * d * std::sqrt((t - 1.0) / K)));
      }
  }

  TEST_CASE("h examples") {
    Eigen::VectorXd w(2), z(2);
    w << 0.5, 0.5;
    z << 1, 0;
    const auto h = h_value_and_grad(w, z, 0.5, 2, 2);
    CHECK(h.value == doctest::Approx(2));
    CHECK(h.grad[0] == doctest::Approx(-1 * 0.5 / (0.5 * 0.5)));
    CHECK(h.grad[1] == 0.0);
    const auto zero = h_value_and_grad(w, Eigen::VectorXd::Zero(2), 0.5, 2, 2);
    CHECK(zero.value == 0.0);
    CHECK(zero.grad.norm() == 0.0);
    Eigen::VectorXd bad(2);
    bad << -1, 0.5;
    CHECK_THROWS_AS(h_value_and_grad(bad, z, 0.5, 2, 2), InvalidArgument);
    CHECK_THROWS_AS(h_value_and_grad(Eigen::VectorXd::Zero(3), z, 0.5, 2, 2), InvalidArgument);
  }

  TEST_CASE("h gradient against central differences") {
    Rng rng(67);
    for (int i = 0; i < 30; ++i) {
      const int K = 2 + static_cast<int>(rng.below(3));
      const int t = 2 + static_cast<int>(rng.below(6));
      const int n = K * (t - 1);
      const double delta = 0.1 + 0.8 * rng.uniform();
      Eigen::VectorXd w(n), z(n);
      for (int j = 0; j < n; ++j) {
        w[j] = rng.uniform();
        z[j] = rng.uniform();
      }
      const auto h = h_value_and_grad(w, z, delta, K, t);
      const Eigen::VectorXd fd = ref::central_difference(
          [&](const Eigen::VectorXd& x) { return h_value_and_grad(x, z, delta, K, t).value; }, w, 1e-6);
      CHECK((h.grad - fd).lpNorm<Eigen::Infinity>() <= 1e-5 * std::max(1.0, fd.lpNorm<Eigen::Infinity>()));
    }
  }
}
