#pragma once

#include <string>
#include <vector>

#include "cbandit/envsim/environment.hpp"

namespace cbandit {

/// Named environments: "two-cell", "checkerboard", "additive-smoothstep", "flat".
Environment make_preset(const std::string& name, ContextLaw law = ContextLaw::FiniteGrid);

std::vector<std::string> preset_names();

}  // namespace cbandit
