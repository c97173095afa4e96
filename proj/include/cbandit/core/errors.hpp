#pragma once

#include <stdexcept>
#include <string>

namespace cbandit {

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An algorithm invariant failed (solver breakdown, infeasible oracle that must
// be feasible, certified bound exceeded). The CLI maps this to exit code 2.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user configuration. The CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cbandit
