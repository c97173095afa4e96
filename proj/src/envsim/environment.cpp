#include "cbandit/envsim/environment.hpp"

#include <algorithm>
#include <cmath>

#include "cbandit/core/errors.hpp"
#include "cbandit/oracles/oracles.hpp"

namespace cbandit {

Environment::Environment(std::string name, std::size_t d, ContextLaw law, std::vector<Context> support,
                         std::vector<IndicatorBasisFunction> means)
    : name_(std::move(name)), d_(d), law_(law), support_(std::move(support)), mu_(std::move(means)) {
  if (mu_.empty()) throw InvalidArgument("environment needs at least one arm");
  if (law_ == ContextLaw::FiniteGrid && support_.empty()) throw InvalidArgument("finite context law needs support");
  for (const auto& w : support_) validate_context(w, d_);
  // mu must lie in [0,1]: check the grid spanned by every anchor and the
  // support (step functions are constant on its cells), plus random probes.
  std::vector<Context> pts = support_;
  for (const auto& f : mu_) {
    if (f.dim() != d_) throw InvalidArgument("mean function dimension mismatch");
    pts.insert(pts.end(), f.anchors().begin(), f.anchors().end());
  }
  auto probes = minimal_grid(pts, d_).points();
  Rng rng(0xC0FFEE);
  for (int i = 0; i < 1000; ++i) {
    Context w(d_);
    for (double& x : w) x = rng.uniform();
    probes.push_back(std::move(w));
  }
  for (const auto& w : probes)
    for (int a = 0; a < K(); ++a) {
      const double m = mu(a, w);
      if (!(m >= -1e-12 && m <= 1.0 + 1e-12)) throw InvalidArgument("mean reward outside [0,1] in " + name_);
    }
}

Context Environment::sample_context(Rng& rng) const {
  if (law_ == ContextLaw::FiniteGrid) return support_[rng.below(support_.size())];
  Context w(d_);
  for (double& x : w) x = rng.uniform();
  return w;
}

Observation sample_round(const Environment& env, const Policy& g, Rng& rng) {
  if (g.K() != env.K()) throw InvalidArgument("design has wrong arm count");
  Observation o;
  o.context = env.sample_context(rng);
  const auto p = g.probs(o.context);
  const double u = rng.uniform();
  double cum = 0.0;
  int a = -1;
  for (int i = 0; i < env.K(); ++i) {
    if (p[static_cast<std::size_t>(i)] <= 0.0) continue;
    cum += p[static_cast<std::size_t>(i)];
    a = i;
    if (u < cum) break;
  }
  if (a < 0) throw InvalidArgument("design assigns no probability to any arm");
  o.action = a;
  o.propensity = p[static_cast<std::size_t>(a)];
  o.reward = rng.uniform() < env.mu(a, o.context) ? 1 : 0;
  return o;
}

ValueEstimate policy_value(const Environment& env, const Policy& pi, std::size_t mc_draws, std::uint64_t mc_seed) {
  auto integrand = [&](const Context& w) {
    const auto p = pi.probs(w);
    double v = 0.0;
    for (int a = 0; a < env.K(); ++a) v += env.mu(a, w) * p[static_cast<std::size_t>(a)];
    return v;
  };
  if (env.finite()) {
    double s = 0.0;
    for (const auto& w : env.support()) s += integrand(w);
    return {s / static_cast<double>(env.support().size()), 0.0};
  }
  Rng rng(mc_seed);
  double s = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < mc_draws; ++i) {
    const double v = integrand(env.sample_context(rng));
    s += v;
    s2 += v * v;
  }
  const double n = static_cast<double>(mc_draws);
  const double mean = s / n;
  const double var = std::max(0.0, s2 / n - mean * mean);
  return {mean, std::sqrt(var / n)};
}

double optimal_value(const Environment& env) {
  if (!env.finite()) return policy_value(env, optimal_policy(env)).value;
  double s = 0.0;
  for (const auto& w : env.support()) {
    double best = 0.0;
    for (int a = 0; a < env.K(); ++a) best = std::max(best, env.mu(a, w));
    s += best;
  }
  return s / static_cast<double>(env.support().size());
}

Policy optimal_policy(const Environment& env) {
  return Policy::argmax(Regressor(RegressorKind::SumToZero, env.mean_functions()));
}

BestInClass best_in_class_value(const Environment& env, const ClassSpec& spec) {
  if (!env.finite()) throw InvalidArgument("best-in-class value needs a finite context law");
  if (spec.kind != RegressorKind::SumToOne) throw InvalidArgument("best-in-class value needs a sum-to-one class");
  const ClassBasis basis(spec, env.K(), env.dim(), env.support());
  const double p = 1.0 / static_cast<double>(env.support().size());
  Eigen::MatrixXd costs(env.K(), basis.num_groups());
  for (int g = 0; g < basis.num_groups(); ++g)
    for (int a = 0; a < env.K(); ++a) costs(a, g) = p * env.mu(a, basis.group_points()[static_cast<std::size_t>(g)]);
  const OracleResult r = lccsco_grouped(basis, costs, {}, Sense::Maximize);
  if (!r.feasible) throw InvalidArgument("class specification is infeasible");
  return {r.value, Policy::per_arm(r.f), r.f};
}

}  // namespace cbandit
