#include "cbandit/core/policy.hpp"

#include <cmath>
#include <string>

#include "cbandit/core/errors.hpp"

namespace cbandit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Policy::Policy(Variant v) : v_(std::move(v)) {
  std::visit(overloaded{
                 [](const UniformPolicy& u) {
                   if (u.K < 1) throw InvalidArgument("policy needs K >= 1");
                 },
                 [](const PerArmPolicy& p) {
                   if (p.f.kind() != RegressorKind::SumToOne)
                     throw InvalidArgument("per-arm policy needs a sum-to-one regressor");
                 },
                 [](const MixturePolicy& m) {
                   if (!(m.delta >= 0.0 && m.delta <= 1.0)) throw InvalidArgument("mixture weight outside [0,1]");
                   if (!m.tilt) throw InvalidArgument("mixture without tilt");
                 },
                 [](const ArgmaxPolicy&) {},
             },
             v_);
}

Policy Policy::mixture(double delta, Policy tilt) {
  return Policy(MixturePolicy{delta, std::make_shared<const Policy>(std::move(tilt))});
}

int Policy::K() const {
  return std::visit(overloaded{
                        [](const UniformPolicy& u) { return u.K; },
                        [](const PerArmPolicy& p) { return p.f.K(); },
                        [](const MixturePolicy& m) { return m.tilt->K(); },
                        [](const ArgmaxPolicy& p) { return p.f.K(); },
                    },
                    v_);
}

int argmax_lowest(const std::vector<double>& v) {
  int best = 0;
  for (std::size_t a = 1; a < v.size(); ++a)
    if (v[a] > v[static_cast<std::size_t>(best)]) best = static_cast<int>(a);
  return best;
}

double Policy::prob(int a, const Context& w) const {
  return std::visit(overloaded{
                        [](const UniformPolicy& u) { return 1.0 / u.K; },
                        [&](const PerArmPolicy& p) { return p.f.eval(a, w); },
                        [&](const MixturePolicy& m) {
                          const int K = m.tilt->K();
                          return m.delta / K + (1.0 - m.delta) * m.tilt->prob(a, w);
                        },
                        [&](const ArgmaxPolicy& p) { return argmax_lowest(p.f.values(w)) == a ? 1.0 : 0.0; },
                    },
                    v_);
}

std::vector<double> Policy::probs(const Context& w) const {
  return std::visit(overloaded{
                        [](const UniformPolicy& u) { return std::vector<double>(u.K, 1.0 / u.K); },
                        [&](const PerArmPolicy& p) { return p.f.values(w); },
                        [&](const MixturePolicy& m) {
                          auto v = m.tilt->probs(w);
                          const double K = static_cast<double>(v.size());
                          for (double& x : v) x = m.delta / K + (1.0 - m.delta) * x;
                          return v;
                        },
                        [&](const ArgmaxPolicy& p) {
                          std::vector<double> v(static_cast<std::size_t>(p.f.K()), 0.0);
                          v[static_cast<std::size_t>(argmax_lowest(p.f.values(w)))] = 1.0;
                          return v;
                        },
                    },
                    v_);
}

double empirical_is_ratio(const Policy& f, const Policy& g, const std::vector<Context>& contexts) {
  if (f.K() != g.K()) throw InvalidArgument("policies have different arm counts");
  if (contexts.empty()) throw InvalidArgument("empirical IS ratio needs at least one context");
  double s = 0.0;
  for (const auto& w : contexts) {
    const auto pf = f.probs(w);
    const auto pg = g.probs(w);
    for (std::size_t a = 0; a < pf.size(); ++a) {
      if (!(pg[a] > 0.0))
        throw InvalidArgument("design probability vanishes at arm " + std::to_string(a + 1));
      s += pf[a] / pg[a];
    }
  }
  return s / static_cast<double>(contexts.size());
}

double simplex_violation(const Policy& pi, const std::vector<Context>& points) {
  double worst = 0.0;
  for (const auto& w : points) {
    double sum = 0.0;
    for (double p : pi.probs(w)) {
      sum += p;
      worst = std::max(worst, -p);
    }
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

}  // namespace cbandit
