#include "cbandit/egreedy/egreedy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "cbandit/core/errors.hpp"

namespace cbandit {

void validate_config(const EgreedyConfig& cfg) {
  if (!(cfg.p > 0.0)) throw InvalidArgument("entropy exponent p must be > 0");
  if (cfg.K < 1) throw InvalidArgument("K must be >= 1");
  if (cfg.T < 1) throw InvalidArgument("horizon must be >= 1");
  validate_spec(cfg.spec);
  if (cfg.variant == Variant::Direct && cfg.spec.kind != RegressorKind::SumToOne)
    throw InvalidArgument("direct policy optimization needs a sum-to-one class");
  if (cfg.variant == Variant::Hinge && cfg.spec.kind != RegressorKind::SumToZero)
    throw InvalidArgument("hinge-risk optimization needs a sum-to-zero class");
}

double egreedy_delta(int t, double p) {
  if (t < 1) throw InvalidArgument("round index must be >= 1");
  return std::pow(static_cast<double>(t), -std::max(1.0 / 3.0, p / (p + 1.0)));
}

double surrogate_loss(Variant v, const Regressor& f, const Observation& obs) {
  if (!(obs.propensity > 0.0)) throw InvalidArgument("propensity must be positive");
  const double x = f.eval(obs.action, obs.context);
  const double phi = v == Variant::Direct ? x : std::max(0.0, 1.0 + x);
  return phi * (1.0 - obs.reward) / (f.K() * obs.propensity);
}

Policy policy_map(Variant v, const Regressor& f) {
  if (v == Variant::Hinge) return Policy::argmax(f);
  if (f.kind() != RegressorKind::SumToOne) throw InvalidArgument("direct policy map needs a sum-to-one regressor");
  validate_regressor(f, anchor_grid(f).points());
  return Policy::per_arm(f);
}

double hinge_point_risk(const std::vector<double>& mu, const std::vector<double>& x) {
  const double K = static_cast<double>(mu.size());
  double r = 0.0;
  for (std::size_t a = 0; a < mu.size(); ++a) r += (1.0 - mu[a]) / K * std::max(0.0, 1.0 + x[a]);
  return r;
}

namespace {

// Minimizes over the sum-to-zero box [-K, K]^K by enumerating the first K-1
// coordinates on a lattice and refining each by golden-section search.
std::vector<double> hinge_point_minimizer(const std::vector<double>& mu) {
  const int K = static_cast<int>(mu.size());
  if (K == 1) return {0.0};
  const double step = 0.01;
  const int n = static_cast<int>(std::lround(2.0 * K / step));
  std::vector<double> x(static_cast<std::size_t>(K)), best;
  double best_r = kInf;
  std::vector<int> idx(static_cast<std::size_t>(K - 1), 0);
  while (true) {
    double s = 0.0;
    for (int i = 0; i < K - 1; ++i) {
      x[static_cast<std::size_t>(i)] = -K + step * idx[static_cast<std::size_t>(i)];
      s += x[static_cast<std::size_t>(i)];
    }
    x.back() = -s;
    if (std::abs(x.back()) <= K + 1e-12) {
      const double r = hinge_point_risk(mu, x);
      if (r < best_r) {
        best_r = r;
        best = x;
      }
    }
    int i = 0;
    while (i < K - 1 && ++idx[static_cast<std::size_t>(i)] > n) idx[static_cast<std::size_t>(i++)] = 0;
    if (i == K - 1) break;
  }
  // Golden-section refinement of each free coordinate, compensating in the last.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < K - 1; ++i) {
    auto eval = [&](double v) {
      auto y = best;
      y.back() += y[static_cast<std::size_t>(i)] - v;
      y[static_cast<std::size_t>(i)] = v;
      return hinge_point_risk(mu, y);
    };
    double lo = best[static_cast<std::size_t>(i)] - step, hi = best[static_cast<std::size_t>(i)] + step;
    for (int it = 0; it < 60; ++it) {
      const double m1 = hi - gr * (hi - lo), m2 = lo + gr * (hi - lo);
      if (eval(m1) <= eval(m2)) hi = m2;
      else lo = m1;
    }
    const double v = 0.5 * (lo + hi);
    if (eval(v) < hinge_point_risk(mu, best)) {
      best.back() += best[static_cast<std::size_t>(i)] - v;
      best[static_cast<std::size_t>(i)] = v;
    }
  }
  return best;
}

std::vector<double> mu_at(const Environment& env, const Context& w) {
  std::vector<double> m(static_cast<std::size_t>(env.K()));
  for (int a = 0; a < env.K(); ++a) m[static_cast<std::size_t>(a)] = env.mu(a, w);
  return m;
}

}  // namespace

HingeOracle hinge_risk_oracle(const Environment& env) {
  if (!env.finite()) throw InvalidArgument("hinge oracle needs a finite context law");
  HingeOracle out;
  const double p = 1.0 / static_cast<double>(env.support().size());
  for (const auto& w : env.support()) {
    const auto m = mu_at(env, w);
    auto x = hinge_point_minimizer(m);
    out.risk += p * hinge_point_risk(m, x);
    out.f_star.push_back(std::move(x));
  }
  return out;
}

double hinge_risk(const Environment& env, const Regressor& f) {
  if (!env.finite()) throw InvalidArgument("hinge risk needs a finite context law");
  double r = 0.0;
  for (const auto& w : env.support()) r += hinge_point_risk(mu_at(env, w), f.values(w));
  return r / static_cast<double>(env.support().size());
}

double policy_risk(const Environment& env, const Policy& pi) {
  return (1.0 - policy_value(env, pi).value) / env.K();
}

EgreedyRun run_egreedy(const Environment& env, const EgreedyConfig& cfg) {
  validate_config(cfg);
  if (env.K() != cfg.K) throw InvalidArgument("config K does not match the environment");
  EgreedyRun run;
  if (cfg.compare_to_best_in_class) {
    ClassSpec s = cfg.spec;
    s.kind = RegressorKind::SumToOne;
    run.comparator_value = best_in_class_value(env, s).value;
  } else {
    run.comparator_value = optimal_value(env);
  }
  const std::size_t mc = 20000;
  const double v_uniform = policy_value(env, Policy::uniform(cfg.K), mc, cfg.seed).value;

  Policy pi_hat = Policy::uniform(cfg.K);
  double v_pi_hat = v_uniform;
  std::vector<Observation> history;
  double cum = 0.0, noise = 0.0, expl = 0.0, exploit = 0.0;
  run.records.reserve(static_cast<std::size_t>(cfg.T));

  for (int t = 1; t <= cfg.T; ++t) {
    const double delta = egreedy_delta(t, cfg.p);
    const Policy design = Policy::mixture(delta, pi_hat);
    Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(t));
    const Observation obs = sample_round(env, design, rng);
    history.push_back(obs);

    const double vg = delta * v_uniform + (1.0 - delta) * v_pi_hat;
    cum += run.comparator_value - obs.reward;
    noise += vg - obs.reward;
    expl += delta * (run.comparator_value - v_uniform);
    exploit += (1.0 - delta) * (run.comparator_value - v_pi_hat);

    RoundRecord rec;
    rec.round = t;
    rec.obs = obs;
    rec.delta_t = delta;
    rec.cum_regret = cum;
    rec.noise_cum = noise;
    rec.expl_cost_cum = expl;
    rec.exploit_cost_cum = exploit;
    rec.design_value = vg;
    run.records.push_back(std::move(rec));

    const bool refit = cfg.refit == RefitCadence::EveryRound || (t & (t - 1)) == 0;
    if (refit) {
      const ErmResult fit = cfg.variant == Variant::Direct ? erm_direct(history, cfg.spec, cfg.K, cfg.settings)
                                                           : erm_hinge(history, cfg.spec, cfg.K, cfg.settings);
      pi_hat = policy_map(cfg.variant, fit.f);
      v_pi_hat = policy_value(env, pi_hat, mc, cfg.seed ^ static_cast<std::uint64_t>(t)).value;
    }
  }
  return run;
}

}  // namespace cbandit
