#pragma once

#include <Eigen/Dense>

namespace cbandit {

struct ScheduleConstants {
  double c1, c2, c3, c4, c5, c6, c7, c1_prime;
};

/// Throws InvalidArgument for p = 1 or p = 2, where the case formulas are
/// singular.
ScheduleConstants schedule_constants(double c, double p);

/// tau^-(1/2 min 1/(2p))
double delta_tau(int tau, double p);

/// log(tau (tau + 1) / epsilon)
double confidence_log(double epsilon, int tau);

double v_tau(double epsilon, double delta, int tau, double c, double p, int K);
double a_tau(double epsilon, double delta, double v, int tau, double c, double p);
double b_tau(double epsilon, double delta, double v, int tau);
/// 2 (a_tau + b_tau)
double x_tau(double epsilon, double delta, double v, int tau, double c, double p);

struct HValue {
  double value = 0.0;
  Eigen::VectorXd grad;
};

/// h(w, z) = (1/(t-1)) sum z_i / (delta/K + (1-delta) w_i) and its gradient
/// in w; vectors have length K (t-1). Throws on a nonpositive denominator.
HValue h_value_and_grad(const Eigen::VectorXd& w, const Eigen::VectorXd& z, double delta, int K, int t);

/// Lipschitz modulus 2 Delta delta^-2 sqrt(K / t). Warns on stderr (or sets
/// *violated) when Delta >= delta / 2.
double xi(double Delta, double delta, int K, int t, bool* violated = nullptr);

/// Radius solving xi_{t-1, delta}(Delta) = K / 3.
double search_radius(double delta, int K, int t);

}  // namespace cbandit
