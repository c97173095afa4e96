#include "cbandit/envsim/presets.hpp"

#include "cbandit/core/errors.hpp"

namespace cbandit {

namespace {

std::vector<Context> centers_1d(int n) {
  std::vector<Context> pts;
  for (int i = 0; i < n; ++i) pts.push_back({(2.0 * i + 1.0) / (2.0 * n)});
  return pts;
}

std::vector<Context> centers_2d(int n) {
  std::vector<Context> pts;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pts.push_back({(2.0 * i + 1.0) / (2.0 * n), (2.0 * j + 1.0) / (2.0 * n)});
  return pts;
}

IndicatorBasisFunction ibf(std::size_t d, std::vector<Context> anchors, std::vector<double> beta) {
  return IndicatorBasisFunction(d, std::move(anchors), std::move(beta));
}

// Smoothstep 3x^2 - 2x^3 sampled on quarter steps.
constexpr double kSmooth[] = {0.0, 0.15625, 0.5, 0.84375};

}  // namespace

std::vector<std::string> preset_names() { return {"two-cell", "checkerboard", "additive-smoothstep", "flat"}; }

Environment make_preset(const std::string& name, ContextLaw law) {
  if (name == "two-cell") {
    // Arm 1 is better below 0.5, arm 2 above.
    return Environment(name, 1, law, centers_1d(8),
                       {ibf(1, {{0.0}, {0.5}}, {0.8, -0.6}), ibf(1, {{0.0}, {0.5}}, {0.2, 0.6})});
  }
  if (name == "checkerboard") {
    // xor(w) = 1{w1 >= .5} + 1{w2 >= .5} - 2 * 1{w >= (.5,.5)}
    const std::vector<Context> anc = {{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}, {0.5, 0.5}};
    return Environment(name, 2, law, centers_2d(4),
                       {ibf(2, anc, {0.3, 0.4, 0.4, -0.8}), ibf(2, anc, {0.7, -0.4, -0.4, 0.8})});
  }
  if (name == "additive-smoothstep") {
    std::vector<Context> anc = {{0.0, 0.0}};
    std::vector<double> b1 = {0.2}, b2 = {0.8};
    for (int l = 0; l < 2; ++l)
      for (int k = 1; k < 4; ++k) {
        Context p(2, 0.0);
        p[static_cast<std::size_t>(l)] = k / 4.0;
        anc.push_back(p);
        const double inc = 0.3 * (kSmooth[k] - kSmooth[k - 1]);
        b1.push_back(inc);
        b2.push_back(-inc);
      }
    return Environment(name, 2, law, centers_2d(4), {ibf(2, anc, b1), ibf(2, anc, b2)});
  }
  if (name == "flat") {
    return Environment(name, 1, law, centers_1d(8),
                       {IndicatorBasisFunction::constant(1, 0.5), IndicatorBasisFunction::constant(1, 0.5)});
  }
  throw ConfigError("unknown environment preset '" + name + "'");
}

}  // namespace cbandit
