#include "cbandit/core/types.hpp"

#include <cmath>
#include <string>

#include "cbandit/core/errors.hpp"

namespace cbandit {

void validate_context(const Context& w, std::size_t d) {
  if (w.size() != d)
    throw InvalidArgument("context has dimension " + std::to_string(w.size()) + ", expected " +
                          std::to_string(d));
  for (double x : w)
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("context coordinate outside [0,1]");
}

void validate_observation(const Observation& o, int K, std::size_t d) {
  validate_context(o.context, d);
  if (o.action < 0 || o.action >= K) throw InvalidArgument("action out of range");
  if (o.reward != 0 && o.reward != 1) throw InvalidArgument("reward must be 0 or 1");
  if (!(o.propensity > 0.0 && o.propensity <= 1.0 + 1e-12))
    throw InvalidArgument("propensity must lie in (0,1]");
}

}  // namespace cbandit
