#include "cbandit/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "cbandit/cli/csv.hpp"
#include "cbandit/core/errors.hpp"
#include "cbandit/envsim/presets.hpp"
#include "cbandit/verify/suites.hpp"

namespace cbandit::cli {

RunLog execute(const RunConfig& cfg, std::uint64_t seed) {
  const Environment env = make_preset(cfg.preset, cfg.law);
  if (cfg.algorithm == Algorithm::Gpe) {
    GpeConfig g = cfg.gpe;
    g.seed = seed;
    return run_gpe(env, g).records;
  }
  EgreedyConfig g = cfg.egreedy;
  g.seed = seed;
  return run_egreedy(env, g).records;
}

int thread_cap() {
  if (const char* s = std::getenv("NUM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw ConfigError("cannot write " + tmp);
    os << content;
    if (!os.flush()) throw ConfigError("cannot write " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw ConfigError("cannot move output into place at " + path + ": " + ec.message());
}

namespace {

// Maps the error taxonomy onto exit codes.
template <class F>
int guarded(std::ostream& diag, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    diag << "error: " << e.what() << '\n';
    return 1;
  } catch (const InvalidArgument& e) {
    diag << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    diag << "numerical invariant violated: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    diag << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace

int cmd_run(const std::string& config_path, const std::optional<std::string>& out,
            const std::optional<std::uint64_t>& seed, std::ostream& progress, std::ostream& diag) {
  return guarded(diag, [&] {
    RunConfig cfg = load_run_config(config_path);
    const std::uint64_t s = seed ? *seed : cfg.seeds.front();
    const std::optional<std::string> path = out ? out : cfg.out;
    if (!path) throw ConfigError("config key 'out': no output path (set it or pass --out)");
    progress << "run " << algorithm_name(cfg.algorithm) << " on " << cfg.preset << " seed " << s << '\n';
    const RunLog log = execute(cfg, s);
    std::ostringstream os;
    write_run_csv(os, log);
    write_file_atomic(*path, os.str());
    progress << "wrote " << log.size() << " rounds to " << *path << '\n';
    return 0;
  });
}

int cmd_verify(const std::string& suite, std::ostream& progress, std::ostream& diag) {
  return guarded(diag, [&] {
    if (!verify::is_suite(suite)) {
      diag << "error: unknown suite '" << suite << "'; expected one of";
      for (const auto& n : verify::suite_names()) diag << ' ' << n;
      diag << " all\n";
      return 1;
    }
    verify::SuiteOptions opt;
    if (const char* p = std::getenv("CBANDIT_VERIFY_PERTURB")) opt.perturbation = std::strtod(p, nullptr);
    const std::vector<std::string> names = suite == "all" ? verify::suite_names() : std::vector<std::string>{suite};
    int failed = 0;
    for (const auto& n : names) {
      const verify::SuiteReport r = verify::run_suite(n, opt);
      progress << n << ": " << r.passed << " passed, " << r.failed << " failed\n";
      for (const auto& f : r.failures) diag << "  " << n << ": " << f << '\n';
      failed += r.failed;
    }
    return failed == 0 ? 0 : 2;
  });
}

int cmd_compare(const std::vector<std::string>& config_paths, const std::string& out, std::ostream& progress,
                std::ostream& diag) {
  return guarded(diag, [&] {
    if (config_paths.size() < 2) throw ConfigError("compare needs at least two configs");
    std::vector<RunConfig> cfgs;
    for (const auto& p : config_paths) cfgs.push_back(load_run_config(p));
    for (std::size_t i = 1; i < cfgs.size(); ++i)
      if (cfgs[i].preset != cfgs[0].preset || cfgs[i].law != cfgs[0].law)
        throw ConfigError("config key 'environment': " + config_paths[i] + " uses " + cfgs[i].preset +
                          " but " + config_paths[0] + " uses " + cfgs[0].preset);

    struct Job {
      const RunConfig* cfg;
      std::uint64_t seed;
      std::string rows;
      std::string error;
      int code = 0;
    };
    std::vector<Job> jobs;
    for (const auto& c : cfgs)
      for (auto s : c.seeds) jobs.push_back({&c, s, {}, {}, 0});

    std::atomic<std::size_t> next{0};
    std::mutex io;
    auto worker = [&] {
      for (std::size_t i = next++; i < jobs.size(); i = next++) {
        Job& j = jobs[i];
        std::ostringstream err;
        j.code = guarded(err, [&] {
          const RunLog log = execute(*j.cfg, j.seed);
          std::ostringstream os;
          write_long_rows(os, algorithm_name(j.cfg->algorithm), j.seed, log);
          j.rows = os.str();
          return 0;
        });
        j.error = err.str();
        std::lock_guard<std::mutex> lock(io);
        progress << "done " << algorithm_name(j.cfg->algorithm) << " seed " << j.seed << '\n';
      }
    };
    const int n = std::min<int>(thread_cap(), static_cast<int>(jobs.size()));
    std::vector<std::thread> pool;
    for (int i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int code = 0;
    for (const auto& j : jobs)
      if (j.code != 0) {
        diag << j.error;
        code = std::max(code, j.code);
      }
    if (code != 0) return code;
    std::string all = std::string(kLongHeader) + '\n';
    for (const auto& j : jobs) all += j.rows;
    write_file_atomic(out, all);
    progress << "wrote " << jobs.size() << " run blocks to " << out << '\n';
    return 0;
  });
}

}  // namespace cbandit::cli
