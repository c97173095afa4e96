#include "cbandit/verify/suites.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "cbandit/core/errors.hpp"
#include "cbandit/core/variation.hpp"
#include "cbandit/egreedy/egreedy.hpp"
#include "cbandit/envsim/environment.hpp"
#include "cbandit/envsim/rng.hpp"
#include "cbandit/gpe/gpe.hpp"
#include "cbandit/gpe/schedule.hpp"
#include "cbandit/optim/ellipsoid.hpp"
#include "cbandit/optim/lp.hpp"
#include "cbandit/oracles/erm.hpp"
#include "cbandit/oracles/oracles.hpp"

namespace cbandit::verify {

void SuiteReport::check(bool ok, const std::string& what) {
  if (ok) {
    ++passed;
    return;
  }
  ++failed;
  if (failures.size() < 10) failures.push_back(what);
}

void SuiteReport::merge(const SuiteReport& o) {
  passed += o.passed;
  failed += o.failed;
  for (const auto& f : o.failures)
    if (failures.size() < 10) failures.push_back(o.name + ": " + f);
}

std::vector<std::string> suite_names() {
  return {"svn", "grids", "ellipsoid", "lp", "representation", "calibration", "isratio", "schedules"};
}

bool is_suite(const std::string& name) {
  if (name == "all") return true;
  const auto n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "svn") return suite_svn(opt);
  if (name == "grids") return suite_grids(opt);
  if (name == "ellipsoid") return suite_ellipsoid(opt);
  if (name == "lp") return suite_lp(opt);
  if (name == "representation") return suite_representation(opt);
  if (name == "calibration") return suite_calibration(opt);
  if (name == "isratio") return suite_isratio(opt);
  if (name == "schedules") return suite_schedules(opt);
  if (name == "all") {
    SuiteReport all{"all"};
    for (const auto& n : suite_names()) all.merge(run_suite(n, opt));
    return all;
  }
  throw InvalidArgument("unknown suite " + name);
}

namespace {

std::string fmt(const char* label, int i, double got, double want) {
  std::ostringstream os;
  os.precision(17);
  os << label << " #" << i << ": got " << got << ", expected " << want;
  return os.str();
}

double lattice(Rng& rng, int n) { return static_cast<double>(rng.below(static_cast<std::uint64_t>(n))) / n; }

// Distinct interior knots on the 1/n lattice.
std::vector<double> random_knots(Rng& rng, int count, int n) {
  std::set<double> k;
  while (static_cast<int>(k.size()) < count) k.insert((1.0 + static_cast<double>(rng.below(n - 1))) / n);
  return {k.begin(), k.end()};
}

Context random_context(Rng& rng, std::size_t d, int n) {
  Context w(d);
  for (auto& x : w) x = lattice(rng, n);
  return w;
}

IndicatorBasisFunction random_ibf(Rng& rng, std::size_t d) {
  std::vector<std::vector<double>> knots;
  for (std::size_t j = 0; j < d; ++j) {
    auto k = random_knots(rng, 1 + static_cast<int>(rng.below(3)), 16);
    k.insert(k.begin(), 0.0);
    knots.push_back(k);
  }
  // Anchors: a random subset of the product of the knots.
  std::vector<Context> all{{}};
  for (const auto& k : knots) {
    std::vector<Context> next;
    for (const auto& p : all)
      for (double x : k) {
        auto q = p;
        q.push_back(x);
        next.push_back(q);
      }
    all = next;
  }
  std::vector<Context> anc;
  std::vector<double> beta;
  for (const auto& p : all)
    if (rng.uniform() < 0.6) {
      anc.push_back(p);
      beta.push_back(2.0 * rng.uniform() - 1.0);
    }
  if (anc.empty()) {
    anc.push_back(all.back());
    beta.push_back(0.5);
  }
  return IndicatorBasisFunction(d, anc, beta);
}

}  // namespace

SuiteReport suite_svn(const SuiteOptions& opt) {
  SuiteReport r{"svn"};
  Rng rng = Rng::stream(opt.seed, 1);
  for (int i = 0; i < 100; ++i) {
    const std::size_t d = 1 + rng.below(3);
    const IndicatorBasisFunction f = random_ibf(rng, d);
    auto beta = f.beta();
    beta[0] += opt.perturbation;
    const double closed = sectional_variation_norm(IndicatorBasisFunction(d, f.anchors(), beta));
    const RectangularGrid split = anchor_grid(f);
    const double brute = std::abs(f.eval(Context(d, 0.0))) + hk_variation_bruteforce(f, split);
    r.check(std::abs(closed - brute) <= 1e-12 * (1.0 + brute), fmt("svn vs brute force", i, closed, brute));

    // Refining adds zero-variation cells; dropping a knot can only merge cells.
    const auto extra = random_knots(rng, 2, 32);
    const RectangularGrid fine = split.refined(rng.below(d), extra);
    const double brute_fine = std::abs(f.eval(Context(d, 0.0))) + hk_variation_bruteforce(f, fine);
    r.check(std::abs(brute_fine - brute) <= 1e-12 * (1.0 + brute), fmt("refined split", i, brute_fine, brute));
    auto knots = split.knots();
    const std::size_t j = rng.below(d);
    if (knots[j].size() > 2) {
      knots[j].erase(knots[j].begin() + 1 + static_cast<long>(rng.below(knots[j].size() - 2)));
      const double coarse = std::abs(f.eval(Context(d, 0.0))) + hk_variation_bruteforce(f, RectangularGrid(knots));
      r.check(coarse <= brute + 1e-12 * (1.0 + brute), fmt("coarsened split exceeds", i, coarse, brute));
    }
  }
  return r;
}

SuiteReport suite_grids(const SuiteOptions& opt) {
  SuiteReport r{"grids"};
  Rng rng = Rng::stream(opt.seed, 2);
  for (int i = 0; i < 100; ++i) {
    const std::size_t d = 1 + rng.below(3);
    std::vector<Context> pts;
    const int n = 1 + static_cast<int>(rng.below(6));
    for (int k = 0; k < n; ++k) pts.push_back(random_context(rng, d, 8));
    const RectangularGrid g = minimal_grid(pts, d);
    bool ok = true;
    for (const auto& p : pts) ok = ok && g.contains(p);
    r.check(ok, "minimal grid misses an input point #" + std::to_string(i));
    for (std::size_t j = 0; j < d; ++j) {
      const auto& k = g.knots(j);
      r.check(k.front() == 0.0 && k.back() == 1.0 && std::is_sorted(k.begin(), k.end()) &&
                  std::adjacent_find(k.begin(), k.end()) == k.end(),
              "knots not strictly increasing from 0 to 1 #" + std::to_string(i));
      // Minimality: every interior knot is some point's coordinate.
      for (std::size_t m = 1; m + 1 < k.size(); ++m) {
        const bool used = std::any_of(pts.begin(), pts.end(), [&](const Context& p) { return p[j] == k[m]; });
        r.check(used, "minimal grid has an unused knot #" + std::to_string(i));
      }
    }
    std::set<Context> seen;
    bool inside = true;
    for (std::size_t f = 0; f < g.size(); ++f) {
      const auto p = g.point(f);
      inside = inside && g.contains(p);
      seen.insert(p);
    }
    r.check(inside && seen.size() == g.size(), "grid enumeration not a bijection #" + std::to_string(i));
    const RectangularGrid h = minimal_grid({random_context(rng, d, 8)}, d);
    const RectangularGrid m = g.merged(h);
    bool sup = true;
    for (const auto& p : g.points()) sup = sup && m.contains(p);
    for (const auto& p : h.points()) sup = sup && m.contains(p);
    r.check(sup, "merged grid does not contain both inputs #" + std::to_string(i));
    const RectangularGrid ref = g.refined(0, random_knots(rng, 2, 64));
    bool ref_ok = true;
    for (const auto& p : g.points()) ref_ok = ref_ok && ref.contains(p);
    r.check(ref_ok && ref.size() >= g.size(), "refined grid lost points #" + std::to_string(i));
  }
  return r;
}

SuiteReport suite_ellipsoid(const SuiteOptions& opt) {
  SuiteReport r{"ellipsoid"};
  Rng rng = Rng::stream(opt.seed, 3);
  const int dims[] = {2, 5, 10, 20};
  int trial = 0;
  for (int n : dims)
    for (int k = 0; k < 25; ++k, ++trial) {
      const double R = 1.0;
      const double rho = 0.01 + 0.09 * rng.uniform();
      Eigen::VectorXd c(n);
      for (int j = 0; j < n; ++j) c[j] = 2.0 * rng.uniform() - 1.0;
      c *= 0.5 * R * rng.uniform() / std::max(c.norm(), 1e-12);
      auto oracle = [&](const Eigen::VectorXd& y) {
        const Eigen::VectorXd diff = y - c;
        const double dist = diff.norm();
        if (dist <= rho) return SeparationResult::in();
        const Eigen::VectorXd a = diff / dist;
        return SeparationResult::cut(a, a.dot(c) + rho);
      };
      const EllipsoidResult e = ellipsoid_find(oracle, n, R, rho);
      const bool ok = e.found && e.calls <= ellipsoid_cap(n, R, rho) && (e.point - c).norm() <= rho + 1e-12;
      std::ostringstream os;
      os << "hidden ball n=" << n << " trial " << trial << ": found=" << e.found << " calls=" << e.calls
         << " cap=" << ellipsoid_cap(n, R, rho);
      r.check(ok, os.str());
    }
  return r;
}

namespace {

// Best vertex of {x : rows, lower <= x <= upper} by enumerating every set of n
// active constraints. Assumes a bounded feasible region.
std::optional<double> vertex_enumeration(const LinearProgram& lp) {
  const int n = lp.num_vars();
  std::vector<Eigen::VectorXd> A;
  std::vector<double> b;
  for (const auto& row : lp.rows) {
    A.push_back(row.a);
    b.push_back(row.b);
  }
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[j] = 1.0;
    A.push_back(e);
    b.push_back(lp.lower[j]);
    if (std::isfinite(lp.upper[j])) {
      A.push_back(e);
      b.push_back(lp.upper[j]);
    }
  }
  const int m = static_cast<int>(A.size());
  std::optional<double> best;
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    Eigen::MatrixXd M(n, n);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) {
      M.row(i) = A[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])].transpose();
      rhs[i] = b[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (lu.isInvertible()) {
      const Eigen::VectorXd x = lu.solve(rhs);
      if (lp_violation(lp, x) <= 1e-9) {
        const double v = lp.c.dot(x);
        if (!best || (lp.sense == Sense::Minimize ? v < *best : v > *best)) best = v;
      }
    }
    int i = n - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - n + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return best;
}

}  // namespace

SuiteReport suite_lp(const SuiteOptions& opt) {
  SuiteReport r{"lp"};
  Rng rng = Rng::stream(opt.seed, 4);
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const int m = 2 + static_cast<int>(rng.below(4));
    LinearProgram lp(n);
    lp.sense = rng.below(2) ? Sense::Maximize : Sense::Minimize;
    for (int j = 0; j < n; ++j) {
      lp.c[j] = std::round(8.0 * (2.0 * rng.uniform() - 1.0)) / 4.0;
      lp.upper[j] = 1.0 + static_cast<double>(rng.below(4));
    }
    for (int k = 0; k < m; ++k) {
      Eigen::VectorXd a(n);
      for (int j = 0; j < n; ++j) a[j] = std::round(8.0 * (2.0 * rng.uniform() - 1.0)) / 4.0;
      const int kind = static_cast<int>(rng.below(5));
      const double b = std::round(8.0 * (2.0 * rng.uniform() - 0.5)) / 4.0;
      lp.add_row(a, kind == 0 ? RowType::Eq : (kind == 1 ? RowType::Ge : RowType::Le), b);
    }
    const LpResult res = solve_lp(lp);
    const auto brute = vertex_enumeration(lp);
    if (!brute) {
      r.check(res.status == LpStatus::Infeasible, "LP #" + std::to_string(i) + " should be infeasible, got " +
                                                      std::string(to_string(res.status)));
      continue;
    }
    r.check(res.status == LpStatus::Optimal, "LP #" + std::to_string(i) + " status " + std::string(to_string(res.status)));
    if (res.status != LpStatus::Optimal) continue;
    r.check(std::abs(res.value - *brute) <= 1e-7 * (1.0 + std::abs(*brute)), fmt("LP value", i, res.value, *brute));
    r.check(lp_violation(lp, res.x) <= 1e-8, fmt("LP primal violation", i, lp_violation(lp, res.x), 0.0));
    r.check(std::abs(res.dual_value - res.value) <= 1e-7 * (1.0 + std::abs(res.value)),
            fmt("LP duality gap", i, res.dual_value, res.value));
  }
  return r;
}

namespace {

// The minimal-grid class against the same class anchored on a finer lattice
// (a discretization of the full cadlag class; contexts live on the 1/8
// lattice, so the extra knots only add anchors between or beyond them).
RectangularGrid fine_lattice(std::size_t d, int n) {
  std::vector<double> k;
  for (int i = 0; i <= n; ++i) k.push_back(static_cast<double>(i) / n);
  return RectangularGrid(std::vector<std::vector<double>>(d, k));
}

}  // namespace

SuiteReport suite_representation(const SuiteOptions& opt) {
  SuiteReport r{"representation"};
  Rng rng = Rng::stream(opt.seed, 5);
  const int K = 2;
  for (int i = 0; i < 50; ++i) {
    const std::size_t d = 1 + rng.below(2);
    const int t = 1 + static_cast<int>(rng.below(4));
    std::vector<Context> ctx;
    for (int s = 0; s < t; ++s) ctx.push_back(random_context(rng, d, 8));
    ClassSpec coarse;
    coarse.M = 0.5 + 2.0 * rng.uniform();
    ClassSpec fine = coarse;
    fine.grid = fine_lattice(d, d == 1 ? 16 : 8);
    // The active-set QP is dense, so least squares gets a lighter lattice in 2-d.
    ClassSpec fine_ls = coarse;
    fine_ls.grid = fine_lattice(d, d == 1 ? 16 : 4);

    // Cost-sensitive (sum-to-one class).
    Eigen::VectorXd costs(K * t);
    for (int s = 0; s < K * t; ++s) costs[s] = rng.uniform();
    const auto a = lccsco(ctx, costs, {}, coarse, K, Sense::Minimize);
    const auto b = lccsco(ctx, costs, {}, fine, K, Sense::Minimize);
    r.check(a.feasible && b.feasible && std::abs(a.value - b.value) <= 1e-6 && a.value <= b.value + 1e-9,
            fmt("lccsco minimal vs fine", i, a.value, b.value));

    // Least squares.
    Eigen::VectorXd target(K * t);
    for (int s = 0; s < K * t; ++s) target[s] = 2.0 * rng.uniform() - 0.5;
    const auto c = lclso(ctx, target, {}, coarse, K);
    const auto e = lclso(ctx, target, {}, fine_ls, K);
    r.check(c.feasible && e.feasible && std::abs(c.value - e.value) <= 1e-6 && c.value <= e.value + 1e-9,
            fmt("lclso minimal vs fine", i, c.value, e.value));

    // Hinge ERM (sum-to-zero class).
    std::vector<Observation> hist;
    for (int s = 0; s < t; ++s)
      hist.push_back({ctx[static_cast<std::size_t>(s)], static_cast<int>(rng.below(K)),
                      static_cast<int>(rng.below(2)), 0.25 + 0.5 * rng.uniform()});
    ClassSpec hc = coarse, hf = fine;
    hc.kind = hf.kind = RegressorKind::SumToZero;
    const auto h1 = erm_hinge(hist, hc, K);
    const auto h2 = erm_hinge(hist, hf, K);
    r.check(std::abs(h1.objective - h2.objective) <= 1e-6 && h1.objective <= h2.objective + 1e-9,
            fmt("hinge ERM minimal vs fine", i, h1.objective, h2.objective));
  }
  return r;
}

namespace {

Environment random_environment(Rng& rng, int K, std::size_t d) {
  std::set<Context> sup;
  const int n = 1 + static_cast<int>(rng.below(4));
  while (static_cast<int>(sup.size()) < n) sup.insert(random_context(rng, d, 8));
  std::vector<Context> pts(sup.begin(), sup.end());
  std::vector<Context> anc = pts;
  if (std::find(anc.begin(), anc.end(), Context(d, 0.0)) == anc.end()) anc.insert(anc.begin(), Context(d, 0.0));
  std::vector<IndicatorBasisFunction> mu;
  for (int a = 0; a < K; ++a) {
    // Base in [0.3, 0.7] plus jumps of total size <= 0.3 keeps mu in [0, 1].
    std::vector<double> beta(anc.size());
    const double budget = 0.3;
    // anc[0] is the origin
    beta[0] = 0.3 + 0.4 * rng.uniform();
    for (std::size_t j = 1; j < anc.size(); ++j) {
      beta[j] = (2.0 * rng.uniform() - 1.0) * budget / static_cast<double>(anc.size());
    }
    mu.emplace_back(d, anc, beta);
  }
  return Environment("random", d, ContextLaw::FiniteGrid, pts, mu);
}

Regressor random_sum_to_zero(Rng& rng, int K, const std::vector<Context>& anchors, std::size_t d) {
  std::vector<IndicatorBasisFunction> arms;
  std::vector<double> last(anchors.size(), 0.0);
  for (int a = 0; a + 1 < K; ++a) {
    std::vector<double> beta(anchors.size());
    for (std::size_t j = 0; j < anchors.size(); ++j) {
      beta[j] = 2.0 * (2.0 * rng.uniform() - 1.0);
      last[j] -= beta[j];
    }
    arms.emplace_back(d, anchors, beta);
  }
  arms.emplace_back(d, anchors, last);
  return Regressor(RegressorKind::SumToZero, arms);
}

}  // namespace

SuiteReport suite_calibration(const SuiteOptions& opt) {
  SuiteReport r{"calibration"};
  Rng rng = Rng::stream(opt.seed, 6);
  for (int i = 0; i < 200; ++i) {
    const int K = 2 + static_cast<int>(rng.below(2));
    const std::size_t d = 1 + rng.below(2);
    const Environment env = random_environment(rng, K, d);
    std::vector<Context> anc = env.support();
    anc.push_back(Context(d, 0.0));
    std::sort(anc.begin(), anc.end());
    anc.erase(std::unique(anc.begin(), anc.end()), anc.end());
    const Regressor f = random_sum_to_zero(rng, K, anc, d);
    const HingeOracle star = hinge_risk_oracle(env);
    const double lhs = (optimal_value(env) - policy_value(env, Policy::argmax(f)).value) / K;
    const double rhs = hinge_risk(env, f) - star.risk;
    r.check(lhs <= rhs + 1e-6, fmt("calibration gap", i, lhs, rhs));
    r.check(star.risk <= hinge_risk(env, f) + 1e-12, fmt("oracle not minimal", i, star.risk, hinge_risk(env, f)));
  }
  return r;
}

SuiteReport suite_isratio(const SuiteOptions& opt) {
  SuiteReport r{"isratio"};
  Rng rng = Rng::stream(opt.seed, 7);
  for (int i = 0; i < 100; ++i) {
    const int K = rng.below(2) ? 4 : 2;
    const std::size_t d = 1 + rng.below(2);
    std::vector<Context> anc{Context(d, 0.0)};
    for (int j = 0; j < 3; ++j) anc.push_back(random_context(rng, d, 8));
    std::sort(anc.begin(), anc.end());
    anc.erase(std::unique(anc.begin(), anc.end()), anc.end());
    // Zero-sum jumps around 1/K with l1 mass below 1/K stay on the simplex.
    std::vector<std::vector<double>> beta(static_cast<std::size_t>(K), std::vector<double>(anc.size()));
    for (std::size_t j = 0; j < anc.size(); ++j) {
      std::vector<double> u(static_cast<std::size_t>(K));
      double mean = 0.0;
      for (auto& x : u) mean += (x = rng.uniform()) / K;
      for (int a = 0; a < K; ++a)
        beta[static_cast<std::size_t>(a)][j] =
            anc[j] == Context(d, 0.0) ? 1.0 / K : (u[static_cast<std::size_t>(a)] - mean) / (2.0 * K * anc.size());
    }
    beta[0][0] += opt.perturbation;
    std::vector<IndicatorBasisFunction> arms;
    for (int a = 0; a < K; ++a) arms.emplace_back(d, anc, beta[static_cast<std::size_t>(a)]);
    const Regressor f(RegressorKind::SumToOne, arms);
    std::vector<Context> ctx;
    for (int s = 0; s < 20; ++s) ctx.push_back(random_context(rng, d, 16));
    const double ratio = empirical_is_ratio(Policy::per_arm(f), Policy::uniform(K), ctx);
    r.check(std::abs(ratio - K) <= 1e-12, fmt("uniform-design IS ratio", i, ratio, K));
  }
  // The uniform tilt certifies exactly K over any candidate set.
  for (int i = 0; i < 5; ++i) {
    PolicyClassState st(ClassSpec{}, 2, 1);
    Rng draw = Rng::stream(opt.seed, 100 + static_cast<std::uint64_t>(i));
    for (int s = 0; s < 5; ++s)
      st.add_observation({random_context(draw, 1, 8), static_cast<int>(draw.below(2)), 1, 0.5});
    const double cert = certified_is_ratio(st, Regressor::uniform(2, 1), 1.0);
    r.check(std::abs(cert - 2.0) <= 1e-9, fmt("certified uniform ratio", i, cert, 2.0));
  }
  return r;
}

namespace {

// Second evaluation of the elimination schedule, organized around the log
// terms rather than the constant table.
struct Schedule2 {
  double eps, delta, c, p;
  int tau, K;
  double ell() const { return std::log(static_cast<double>(tau)) + std::log(tau + 1.0) - std::log(eps); }
  double c1() const {
    const double s = std::sqrt(c);
    return p < 1 ? 127 * s / (1 - p) : 1 + 127 * s * std::exp(0.5 * (p - 1) * std::log(2.0)) / (p - 1);
  }
  double c1p() const {
    const double s = std::sqrt(c);
    return p < 2 ? 128 * s / (2 - p) : 1 + 64 * s * std::exp((0.5 * p - 1) * std::log(2.0)) / (0.5 * p - 1);
  }
  double v() const {
    const double t = tau, l = ell();
    const double e = p > 2 ? 1.0 / p : 0.5;  // min(1/2, 1/p)
    return 2 * K + (c1p() * std::exp(-e * std::log(t)) + 32 * std::sqrt(l / t) + 16 * (std::log(2.0) + l) / t) / delta;
  }
  double x(double vv) const {
    const double t = tau, l = ell();
    const double e = std::min(0.5, 0.5 / p);
    const double a = std::sqrt(vv) * (c1() * std::exp(-e * std::log(t)) + 37 * std::sqrt(l / t) +
                                      (3 * std::log(2.0) + 3 * l) / (delta * t));
    const double b = 2 * std::sqrt(vv * l / t) + 2 * l / (delta * t);
    return 2 * a + 2 * b;
  }
};

}  // namespace

SuiteReport suite_schedules(const SuiteOptions& opt) {
  SuiteReport r{"schedules"};
  Rng rng = Rng::stream(opt.seed, 8);
  for (int i = 0; i < 1000; ++i) {
    Schedule2 s{};
    s.eps = 0.001 + 0.5 * rng.uniform();
    s.delta = 0.01 + 0.99 * rng.uniform();
    s.c = 0.1 + 5.0 * rng.uniform();
    do s.p = 0.1 + 3.9 * rng.uniform();
    while (std::abs(s.p - 1.0) < 1e-3 || std::abs(s.p - 2.0) < 1e-3);
    s.tau = 1 + static_cast<int>(rng.below(100000));
    s.K = 2 + static_cast<int>(rng.below(4));
    const double v1 = v_tau(s.eps, s.delta, s.tau, s.c, s.p, s.K);
    const double v2 = s.v();
    r.check(std::abs(v1 - v2) <= 1e-12 * std::abs(v2), fmt("v_tau", i, v1, v2));
    const double x1 = x_tau(s.eps, s.delta, v1, s.tau, s.c, s.p);
    const double x2 = s.x(v2);
    r.check(std::abs(x1 - x2) <= 1e-12 * std::abs(x2), fmt("x_tau", i, x1, x2));
  }

  // sum_{tau <= T} x_tau grows like T^{1/2} up to logs for p = 0.5.
  {
    const int K = 2;
    double sum = 0.0;
    std::vector<double> lx, ly;
    int next = 100;
    for (int tau = 1; tau <= 1000000; ++tau) {
      const double dl = delta_tau(tau, 0.5);
      sum += x_tau(0.05, dl, v_tau(0.05, dl, tau, 1.0, 0.5, K), tau, 1.0, 0.5);
      if (tau == next) {
        lx.push_back(std::log(static_cast<double>(tau)));
        ly.push_back(std::log(sum));
        next *= 10;
      }
    }
    const double n = static_cast<double>(lx.size());
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < lx.size(); ++k) mx += lx[k] / n, my += ly[k] / n;
    double sxy = 0, sxx = 0;
    for (std::size_t k = 0; k < lx.size(); ++k) sxy += (lx[k] - mx) * (ly[k] - my), sxx += (lx[k] - mx) * (lx[k] - mx);
    const double slope = sxy / sxx;
    r.check(slope <= 0.6, fmt("cumulative x_tau slope", 0, slope, 0.6));
  }

  // Gradient of h against central differences.
  for (int i = 0; i < 100; ++i) {
    const int K = 2 + static_cast<int>(rng.below(3));
    const int t = 2 + static_cast<int>(rng.below(6));
    const double delta = 0.05 + 0.9 * rng.uniform();
    const auto n = static_cast<Eigen::Index>(K) * (t - 1);
    Eigen::VectorXd w(n), z(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      w[j] = rng.uniform();
      z[j] = rng.uniform();
    }
    const HValue h = h_value_and_grad(w, z, delta, K, t);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double step = 1e-6;
      Eigen::VectorXd wp = w, wm = w;
      wp[j] += step;
      wm[j] -= step;
      const double fd = (h_value_and_grad(wp, z, delta, K, t).value - h_value_and_grad(wm, z, delta, K, t).value) /
                        (2.0 * step);
      worst = std::max(worst, std::abs(fd - h.grad[j]) / std::max(std::abs(fd), 1e-8));
    }
    r.check(worst <= 1e-5, fmt("grad h relative error", i, worst, 0.0));
  }
  return r;
}

}  // namespace cbandit::verify
