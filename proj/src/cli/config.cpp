#include "cbandit/cli/config.hpp"

#include <fstream>
#include <json.hpp>
#include <regex>
#include <set>
#include <sstream>

#include "cbandit/core/errors.hpp"
#include "cbandit/envsim/presets.hpp"

namespace cbandit::cli {

using nlohmann::json;

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Gpe: return "gpe";
    case Algorithm::EgreedyDirect: return "egreedy-direct";
    case Algorithm::EgreedyHinge: return "egreedy-hinge";
  }
  return "?";
}

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw ConfigError("config key '" + key + "': " + what);
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) bad(key, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& key, int lo) {
  if (!j.is_number_integer()) bad(key, "expected an integer");
  const auto v = j.get<long long>();
  if (v < lo || v > 100000000) bad(key, "out of range");
  return static_cast<int>(v);
}

std::uint64_t seed_value(const json& j, const std::string& key) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::uint64_t>(j.get<long long>());
  bad(key, "expected a nonnegative integer");
}

std::string string(const json& j, const std::string& key) {
  if (!j.is_string()) bad(key, "expected a string");
  return j.get<std::string>();
}

// "on"/"off"; JSON booleans are accepted too.
bool flag(const json& j, const std::string& key) {
  if (j.is_boolean()) return j.get<bool>();
  const std::string s = string(j, key);
  if (s == "on") return true;
  if (s == "off") return false;
  bad(key, "expected \"on\" or \"off\"");
}

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) bad(where + it.key(), "unknown key");
}

ClassSpec parse_class(const json& j) {
  if (!j.is_object()) bad("class", "expected an object");
  check_keys(j, "class.", {"M", "C", "structure", "grid"});
  ClassSpec s;
  if (j.contains("M")) s.M = number(j["M"], "class.M");
  if (j.contains("C")) s.C = number(j["C"], "class.C");
  if (!(s.M >= 0.0)) bad("class.M", "must be >= 0");
  if (!(s.C > 0.0)) bad("class.C", "must be > 0");
  if (j.contains("structure")) {
    const std::string v = string(j["structure"], "class.structure");
    if (v == "full") s.structure = Structure::Full;
    else if (v == "additive") s.structure = Structure::Additive;
    else bad("class.structure", "expected \"full\" or \"additive\"");
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    if (!g.is_array()) bad("class.grid", "expected an array of knot arrays");
    std::vector<std::vector<double>> knots;
    for (const auto& row : g) {
      if (!row.is_array()) bad("class.grid", "expected an array of knot arrays");
      std::vector<double> k;
      for (const auto& v : row) k.push_back(number(v, "class.grid"));
      knots.push_back(std::move(k));
    }
    try {
      s.grid = RectangularGrid(std::move(knots));
    } catch (const std::exception& e) {
      bad("class.grid", e.what());
    }
  }
  return s;
}

std::string last_key_before(const std::string& text, std::size_t pos) {
  static const std::regex key_re("\"([^\"\\\\]*)\"\\s*:");
  const std::string head = text.substr(0, std::min(pos, text.size()));
  std::string last;
  for (auto it = std::sregex_iterator(head.begin(), head.end(), key_re); it != std::sregex_iterator(); ++it)
    last = (*it)[1].str();
  return last;
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::string key = last_key_before(text, e.byte);
    throw ConfigError("malformed JSON" + (key.empty() ? std::string() : " after key '" + key + "'") + ": " +
                      e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  check_keys(j, "", {"algorithm", "environment", "K", "T", "seed", "seeds", "p", "c", "epsilon", "x_scale", "class",
                     "doubling_research", "probe_candidates", "comparator", "refit", "out"});

  RunConfig cfg;
  if (!j.contains("algorithm")) bad("algorithm", "missing");
  const std::string alg = string(j["algorithm"], "algorithm");
  if (alg == "gpe") cfg.algorithm = Algorithm::Gpe;
  else if (alg == "egreedy-direct") cfg.algorithm = Algorithm::EgreedyDirect;
  else if (alg == "egreedy-hinge") cfg.algorithm = Algorithm::EgreedyHinge;
  else bad("algorithm", "expected gpe, egreedy-direct or egreedy-hinge");

  if (!j.contains("environment")) bad("environment", "missing");
  const json& e = j["environment"];
  if (e.is_string()) {
    cfg.preset = e.get<std::string>();
  } else if (e.is_object()) {
    check_keys(e, "environment.", {"preset", "law"});
    if (!e.contains("preset")) bad("environment.preset", "missing");
    cfg.preset = string(e["preset"], "environment.preset");
    if (e.contains("law")) {
      const std::string law = string(e["law"], "environment.law");
      if (law == "finite") cfg.law = ContextLaw::FiniteGrid;
      else if (law == "uniform-cube") cfg.law = ContextLaw::UniformCube;
      else bad("environment.law", "expected \"finite\" or \"uniform-cube\"");
    }
  } else {
    bad("environment", "expected a preset name or an object");
  }
  int env_K = 0;
  try {
    env_K = make_preset(cfg.preset, cfg.law).K();
  } catch (const ConfigError& err) {
    bad("environment", err.what());
  }

  int K = env_K;
  if (j.contains("K")) {
    K = integer(j["K"], "K", 1);
    if (K != env_K) bad("K", "does not match the environment's " + std::to_string(env_K) + " arms");
  }
  int T = 100;
  if (j.contains("T")) T = integer(j["T"], "T", 1);
  if (j.contains("seed") && j.contains("seeds")) bad("seeds", "give either seed or seeds");
  if (j.contains("seed")) cfg.seeds = {seed_value(j["seed"], "seed")};
  if (j.contains("seeds")) {
    if (!j["seeds"].is_array() || j["seeds"].empty()) bad("seeds", "expected a nonempty array");
    cfg.seeds.clear();
    for (const auto& s : j["seeds"]) cfg.seeds.push_back(seed_value(s, "seeds"));
  }
  ClassSpec spec;
  if (j.contains("class")) spec = parse_class(j["class"]);
  const double p = j.contains("p") ? number(j["p"], "p") : 0.5;
  if (!(p > 0.0)) bad("p", "must be > 0");
  if (j.contains("out")) cfg.out = string(j["out"], "out");

  auto only_for = [&](const char* key, bool ok, const char* alg_names) {
    if (j.contains(key) && !ok) bad(key, std::string("only applies to ") + alg_names);
  };
  const bool gpe = cfg.algorithm == Algorithm::Gpe;
  only_for("c", gpe, "gpe");
  only_for("epsilon", gpe, "gpe");
  only_for("x_scale", gpe, "gpe");
  only_for("doubling_research", gpe, "gpe");
  only_for("probe_candidates", gpe, "gpe");
  only_for("refit", !gpe, "egreedy");

  std::string comparator = gpe ? "best-in-class" : "optimal";
  if (j.contains("comparator")) {
    comparator = string(j["comparator"], "comparator");
    if (comparator != "best-in-class" && comparator != "optimal")
      bad("comparator", "expected \"best-in-class\" or \"optimal\"");
  }

  if (gpe) {
    GpeConfig& g = cfg.gpe;
    g.K = K;
    g.T = T;
    g.p = p;
    g.spec = spec;
    g.spec.kind = RegressorKind::SumToOne;
    if (j.contains("c")) g.c = number(j["c"], "c");
    if (j.contains("epsilon")) g.epsilon = number(j["epsilon"], "epsilon");
    if (j.contains("x_scale")) g.x_scale = number(j["x_scale"], "x_scale");
    if (j.contains("doubling_research")) g.doubling_research = flag(j["doubling_research"], "doubling_research");
    if (j.contains("probe_candidates")) g.probe_candidates = flag(j["probe_candidates"], "probe_candidates");
    g.compare_to_optimal = comparator == "optimal";
    if (!(g.c > 0.0)) bad("c", "must be > 0");
    if (!(g.epsilon > 0.0 && g.epsilon < 1.0)) bad("epsilon", "must lie in (0, 1)");
    if (!(g.x_scale > 0.0)) bad("x_scale", "must be > 0");
    if (p == 1.0 || p == 2.0) bad("p", "p = 1 and p = 2 are singular for the schedule constants");
    g.seed = cfg.seeds.front();
  } else {
    EgreedyConfig& g = cfg.egreedy;
    g.variant = cfg.algorithm == Algorithm::EgreedyDirect ? Variant::Direct : Variant::Hinge;
    g.K = K;
    g.T = T;
    g.p = p;
    g.spec = spec;
    g.spec.kind = g.variant == Variant::Direct ? RegressorKind::SumToOne : RegressorKind::SumToZero;
    if (j.contains("refit")) {
      const std::string r = string(j["refit"], "refit");
      if (r == "every-round") g.refit = RefitCadence::EveryRound;
      else if (r == "doubling") g.refit = RefitCadence::Doubling;
      else bad("refit", "expected \"every-round\" or \"doubling\"");
    }
    g.compare_to_best_in_class = comparator == "best-in-class";
    g.seed = cfg.seeds.front();
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

void apply_seed(RunConfig& cfg, std::uint64_t seed) {
  cfg.gpe.seed = seed;
  cfg.egreedy.seed = seed;
}

}  // namespace cbandit::cli
