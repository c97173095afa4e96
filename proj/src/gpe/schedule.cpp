#include "cbandit/gpe/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "cbandit/core/errors.hpp"
#include "cbandit/simd/kernels.hpp"

namespace cbandit {

ScheduleConstants schedule_constants(double c, double p) {
  if (!(c > 0.0) || !(p > 0.0)) throw InvalidArgument("entropy constants need c > 0 and p > 0");
  if (p == 1.0 || p == 2.0)
    throw InvalidArgument("entropy exponent p = 1 or p = 2 sits on a singular branch; perturb p slightly");
  ScheduleConstants k{};
  const double rc = std::sqrt(c);
  k.c1 = p < 1.0 ? 127.0 * rc / (1.0 - p) : 1.0 + 127.0 * rc * std::pow(2.0, (p - 1.0) / 2.0) / (p - 1.0);
  k.c2 = 37.0;
  k.c3 = 3.0 * std::log(2.0);
  k.c4 = 3.0;
  k.c5 = 2.0;
  k.c6 = 2.0;
  k.c7 = k.c4 + k.c6;
  // The upper branch is printed with the condition "p > 1"; it is the
  // continuation of the first branch past its pole at p = 2.
  k.c1_prime = p < 2.0 ? 64.0 * rc / (1.0 - p / 2.0)
                       : 1.0 + 64.0 * std::pow(2.0, p / 2.0 - 1.0) * rc / (p / 2.0 - 1.0);
  return k;
}

double delta_tau(int tau, double p) {
  if (tau < 1) throw InvalidArgument("round index must be >= 1");
  return std::pow(static_cast<double>(tau), -std::min(0.5, 1.0 / (2.0 * p)));
}

double confidence_log(double epsilon, int tau) {
  const double t = tau;
  return std::log(t * (t + 1.0) / epsilon);
}

namespace {

void check(double epsilon, double delta, int tau) {
  if (tau < 1) throw InvalidArgument("round index must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("epsilon must lie in (0,1)");
  if (!(delta > 0.0 && delta <= 1.0)) throw InvalidArgument("delta must lie in (0,1]");
}

}  // namespace

double v_tau(double epsilon, double delta, int tau, double c, double p, int K) {
  check(epsilon, delta, tau);
  const auto k = schedule_constants(c, p);
  const double t = tau;
  const double L = confidence_log(epsilon, tau);
  const double brace = k.c1_prime / std::pow(t, std::min(0.5, 1.0 / p)) + 32.0 * std::sqrt(L / t) +
                       16.0 * std::log(2.0) / t + 16.0 / t * L;
  return 2.0 * K + brace / delta;
}

double a_tau(double epsilon, double delta, double v, int tau, double c, double p) {
  check(epsilon, delta, tau);
  const auto k = schedule_constants(c, p);
  const double t = tau;
  const double L = confidence_log(epsilon, tau);
  return std::sqrt(v) * (k.c1 / std::pow(t, std::min(0.5, 1.0 / (2.0 * p))) + k.c2 / std::sqrt(t) * std::sqrt(L) +
                         (k.c3 + k.c4 * L) / (delta * t));
}

double b_tau(double epsilon, double delta, double v, int tau) {
  check(epsilon, delta, tau);
  const double t = tau;
  const double L = confidence_log(epsilon, tau);
  return 2.0 * std::sqrt(v / t * L) + 2.0 / (delta * t) * L;
}

double x_tau(double epsilon, double delta, double v, int tau, double c, double p) {
  return 2.0 * (a_tau(epsilon, delta, v, tau, c, p) + b_tau(epsilon, delta, v, tau));
}

HValue h_value_and_grad(const Eigen::VectorXd& w, const Eigen::VectorXd& z, double delta, int K, int t) {
  if (t < 2) throw InvalidArgument("h needs t >= 2");
  const auto n = static_cast<Eigen::Index>(K) * (t - 1);
  if (w.size() != n || z.size() != n) throw InvalidArgument("h arguments must have length K (t-1)");
  const double floor = delta / K, slope = 1.0 - delta;
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(floor + slope * w[i] > 0.0)) throw InvalidArgument("h denominator is not positive");
  const Eigen::VectorXd weight = Eigen::VectorXd::Constant(n, 1.0 / (t - 1));
  HValue h;
  h.grad.resize(n);
  h.value = simd::kernels().is_ratio_sum(weight.data(), z.data(), w.data(), floor, slope, h.grad.data(),
                                         static_cast<std::size_t>(n));
  return h;
}

double xi(double Delta, double delta, int K, int t, bool* violated) {
  const bool bad = Delta >= delta / 2.0;
  if (violated) *violated = bad;
  else if (bad) std::cerr << "warning: xi evaluated with Delta >= delta/2 (Lipschitz bound not guaranteed)\n";
  return 2.0 * Delta / (delta * delta) * std::sqrt(static_cast<double>(K) / t);
}

double search_radius(double delta, int K, int t) {
  if (t < 2) throw InvalidArgument("search radius needs t >= 2");
  return K / 6.0 * delta * delta * std::sqrt((t - 1.0) / K);
}

}  // namespace cbandit
