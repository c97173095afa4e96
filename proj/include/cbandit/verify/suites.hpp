#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cbandit::verify {

struct SuiteOptions {
  std::uint64_t seed = 20240611;
  // Test hook: added to one coefficient before the closed-form side of each
  // comparison. Any nonzero value must make the affected suites fail.
  double perturbation = 0.0;
};

struct SuiteReport {
  explicit SuiteReport(std::string n = {}) : name(std::move(n)) {}
  std::string name;
  int passed = 0;
  int failed = 0;
  std::vector<std::string> failures;  // first few, for diagnostics
  void check(bool ok, const std::string& what);
  void merge(const SuiteReport& other);
};

std::vector<std::string> suite_names();  // without "all"
bool is_suite(const std::string& name);  // includes "all"
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt = {});

// Individual suites.
SuiteReport suite_svn(const SuiteOptions& opt);
SuiteReport suite_grids(const SuiteOptions& opt);
SuiteReport suite_ellipsoid(const SuiteOptions& opt);
SuiteReport suite_lp(const SuiteOptions& opt);
SuiteReport suite_representation(const SuiteOptions& opt);
SuiteReport suite_calibration(const SuiteOptions& opt);
SuiteReport suite_isratio(const SuiteOptions& opt);
SuiteReport suite_schedules(const SuiteOptions& opt);

}  // namespace cbandit::verify
