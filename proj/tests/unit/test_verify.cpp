#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "cbandit/cli/commands.hpp"
#include "cbandit/verify/suites.hpp"

using namespace cbandit;

TEST_SUITE("verify") {
  TEST_CASE("every suite passes") {
    for (const auto& name : verify::suite_names()) {
      CAPTURE(name);
      const auto r = verify::run_suite(name);
      CHECK(r.failed == 0);
      CHECK(r.passed > 0);
      for (const auto& f : r.failures) MESSAGE(f);
    }
    CHECK(verify::is_suite("all"));
    CHECK(!verify::is_suite("nope"));
  }

  TEST_CASE("perturbed coefficients are caught") {
    verify::SuiteOptions opt;
    opt.perturbation = 1e-3;
    for (const char* name : {"svn", "isratio"}) {
      CAPTURE(name);
      const auto r = verify::run_suite(name, opt);
      CHECK(r.failed > 0);
      CHECK(!r.failures.empty());
    }
    setenv("CBANDIT_VERIFY_PERTURB", "0.001", 1);
    std::ostringstream out, err;
    const int code = cli::cmd_verify("svn", out, err);
    unsetenv("CBANDIT_VERIFY_PERTURB");
    CHECK(code == 2);
    CHECK(!err.str().empty());
  }

  TEST_CASE("report bookkeeping") {
    verify::SuiteReport a("a"), b("b");
    a.check(true, "x");
    b.check(false, "y");
    a.merge(b);
    CHECK(a.passed == 1);
    CHECK(a.failed == 1);
    REQUIRE(a.failures.size() == 1);
    CHECK(a.failures[0].find("y") != std::string::npos);
  }
}
