#pragma once

#include <cstddef>
#include <vector>

namespace cbandit {

// A point of [0,1]^d.
using Context = std::vector<double>;

// Arms are 0-based inside the library; files and the CLI use 1..K.
struct Observation {
  Context context;
  int action = 0;
  int reward = 0;
  double propensity = 1.0;
};

void validate_context(const Context& w, std::size_t d);
void validate_observation(const Observation& o, int K, std::size_t d);

}  // namespace cbandit
