#include "cbandit/gpe/gpe.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "cbandit/core/errors.hpp"
#include "cbandit/gpe/feasibility.hpp"
#include "cbandit/gpe/schedule.hpp"

namespace cbandit {

void validate_config(const GpeConfig& cfg) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw InvalidArgument("epsilon must lie in (0,1)");
  if (!(cfg.p > 0.0) || !(cfg.c > 0.0)) throw InvalidArgument("entropy constants need p > 0 and c > 0");
  if (cfg.K < 1) throw InvalidArgument("K must be >= 1");
  if (cfg.T < 1) throw InvalidArgument("horizon must be >= 1");
  if (!(cfg.x_scale > 0.0)) throw InvalidArgument("x_scale must be > 0");
  if (cfg.spec.kind != RegressorKind::SumToOne) throw InvalidArgument("policy elimination needs a sum-to-one class");
  validate_spec(cfg.spec);
  schedule_constants(cfg.c, cfg.p);  // rejects the singular branches early
}

Regressor blend(const Regressor& a, const Regressor& b, double lambda) {
  if (a.K() != b.K() || a.dim() != b.dim()) throw InvalidArgument("cannot blend regressors of different shape");
  std::vector<IndicatorBasisFunction> arms;
  for (int k = 0; k < a.K(); ++k) {
    std::map<Context, double> coef;
    for (std::size_t j = 0; j < a.arm(k).size(); ++j) coef[a.arm(k).anchors()[j]] += lambda * a.arm(k).beta()[j];
    for (std::size_t j = 0; j < b.arm(k).size(); ++j)
      coef[b.arm(k).anchors()[j]] += (1.0 - lambda) * b.arm(k).beta()[j];
    std::vector<Context> anc;
    std::vector<double> beta;
    for (auto& [x, v] : coef) {
      anc.push_back(x);
      beta.push_back(v);
    }
    arms.emplace_back(a.dim(), std::move(anc), std::move(beta));
  }
  return Regressor(a.kind(), std::move(arms));
}

double certified_is_ratio(PolicyClassState& state, const Regressor& tilt, double delta, const NumericSettings& s) {
  const int t1 = state.rounds();
  if (t1 < 1) throw InvalidArgument("certified ratio needs at least one past round");
  const ClassBasis& basis = state.basis();
  const int K = state.K();
  Eigen::MatrixXd costs(K, basis.num_groups());
  for (int g = 0; g < basis.num_groups(); ++g) {
    const auto& w = basis.group_points()[static_cast<std::size_t>(g)];
    for (int a = 0; a < K; ++a) {
      const double den = delta / K + (1.0 - delta) * tilt.eval(a, w);
      if (!(den > 0.0)) throw NumericalError("design probability vanishes on a past context");
      costs(a, g) = state.counts()[g] / (t1 * den);
    }
  }
  const OracleResult r = lccsco_grouped(basis, costs, state.constraints(), Sense::Maximize, s);
  if (!r.feasible) throw NumericalError("candidate set is empty while certifying the design");
  return r.value;
}

SearchResult exploration_policy_search(PolicyClassState& state, int t, double delta_t,
                                       const std::vector<Regressor>& candidates, const NumericSettings& s) {
  const int K = state.K();
  SearchResult out;
  if (t == 1) {
    out.tilt = Regressor::uniform(K, state.dim());
    out.max_is_ratio = std::numeric_limits<double>::quiet_NaN();
    out.source = "uniform";
    return out;
  }
  if (state.rounds() != t - 1) throw InvalidArgument("search at round t needs exactly t-1 past rounds");
  const double limit = 2.0 * K;

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!state.contains(candidates[i])) continue;
    const double r = certified_is_ratio(state, candidates[i], delta_t, s);
    if (r <= limit) {
      out.tilt = candidates[i];
      out.max_is_ratio = r;
      out.source = "probe " + std::to_string(i);
      return out;
    }
  }

  const ClassBasis& basis = state.basis();
  const double Delta = search_radius(delta_t, K, t);
  bool hypothesis_violated = false;
  xi(Delta, delta_t, K, t - 1, &hypothesis_violated);
  ExplorationFeasibility feas(basis, state.counts(), state.constraints(), delta_t, t, Delta, s);
  const double R = std::sqrt(static_cast<double>(K) * (t - 1));
  EllipsoidOptions opt;
  opt.center = feas.to_reduced(Eigen::MatrixXd::Constant(K, basis.num_groups(), 0.5));
  const EllipsoidResult e =
      ellipsoid_find([&feas](const Eigen::VectorXd& y) { return feas(y); }, feas.dim(), R, Delta, opt);
  out.used_ellipsoid = true;
  out.oracle_calls = e.calls;
  out.ellipsoid_cap = e.cap;
  if (!e.found) {
    std::ostringstream os;
    os << "exploration search failed at round " << t << ": " << e.calls << " oracle calls (cap " << e.cap
       << "), dimension " << feas.dim() << ", Delta " << Delta << (e.proven_empty ? ", target proven empty" : "")
       << (hypothesis_violated ? ", Delta >= delta/2" : "");
    throw NumericalError(os.str());
  }
  out.tilt = feas.last_projection().f;
  out.max_is_ratio = certified_is_ratio(state, out.tilt, delta_t, s);
  out.source = "ellipsoid";
  if (out.max_is_ratio > limit + 1e-6) {
    std::ostringstream os;
    os << "certified IS ratio " << out.max_is_ratio << " exceeds 2K = " << limit << " at round " << t;
    throw NumericalError(os.str());
  }
  return out;
}

EliminationResult eliminate(PolicyClassState& state, int t, double x_t, const NumericSettings& s) {
  if (state.rounds() != t || state.num_constraints() != t - 1)
    throw InvalidArgument("elimination at round t needs t observations and t-1 constraints");
  const OracleResult r = lccsco_grouped(state.basis(), state.risk_coef(t), state.constraints(), Sense::Minimize, s);
  if (!r.feasible) throw NumericalError("candidate set is empty at elimination");
  EliminationResult out{r.value, r.f, r.value + x_t};
  state.add_constraint(out.bound);
  return out;
}

namespace {

bool is_pow2(int t) { return t > 0 && (t & (t - 1)) == 0; }

}  // namespace

GpeRun run_gpe(const Environment& env, const GpeConfig& cfg) {
  validate_config(cfg);
  if (env.K() != cfg.K) throw InvalidArgument("config K does not match the environment");
  GpeRun run;
  run.x_scale = cfg.x_scale;
  bool have_comparator = false;
  if (env.finite()) {
    const BestInClass best = best_in_class_value(env, cfg.spec);
    run.comparator = best.f;
    have_comparator = true;
    run.comparator_value = cfg.compare_to_optimal ? optimal_value(env) : best.value;
  } else {
    run.comparator_value = optimal_value(env);
  }

  PolicyClassState state(cfg.spec, cfg.K, env.dim());
  const Regressor uniform = Regressor::uniform(cfg.K, env.dim());
  std::optional<Regressor> prev, erm;
  double cum = 0.0, noise = 0.0;
  run.records.reserve(static_cast<std::size_t>(cfg.T));

  for (int t = 1; t <= cfg.T; ++t) {
    const double delta = delta_tau(t, cfg.p);
    std::vector<Regressor> cands;
    if (cfg.doubling_research && prev && !is_pow2(t)) cands.push_back(*prev);
    if (cfg.probe_candidates) {
      // Most exploitative first: the first certified candidate is played.
      if (erm) {
        cands.push_back(*erm);
        for (double lambda : {0.125, 0.25, 0.5}) cands.push_back(blend(uniform, *erm, lambda));
      }
      if (prev) cands.push_back(*prev);
      cands.push_back(uniform);
    }
    const SearchResult sr = exploration_policy_search(state, t, delta, cands, cfg.settings);
    const Policy design = Policy::mixture(delta, Policy::per_arm(sr.tilt));

    Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(t));
    const Observation obs = sample_round(env, design, rng);
    const double vg = policy_value(env, design, 20000, cfg.seed ^ static_cast<std::uint64_t>(t)).value;
    state.add_observation(obs);

    const double v = v_tau(cfg.epsilon, delta, t, cfg.c, cfg.p, cfg.K);
    const double x = x_tau(cfg.epsilon, delta, v, t, cfg.c, cfg.p) * cfg.x_scale;
    const EliminationResult el = eliminate(state, t, x, cfg.settings);
    erm = el.argmin;
    prev = sr.tilt;

    cum += run.comparator_value - obs.reward;
    noise += vg - obs.reward;
    RoundRecord rec;
    rec.round = t;
    rec.obs = obs;
    rec.delta_t = delta;
    rec.x_t = x;
    rec.v_t = v;
    if (t > 1) rec.max_is_ratio = sr.max_is_ratio;
    rec.cum_regret = cum;
    rec.noise_cum = noise;
    rec.design_value = vg;
    rec.oracle_calls = sr.oracle_calls;
    rec.used_ellipsoid = sr.used_ellipsoid;
    rec.comparator_retained = have_comparator ? state.contains(run.comparator) : true;
    run.records.push_back(std::move(rec));
  }
  return run;
}

}  // namespace cbandit
