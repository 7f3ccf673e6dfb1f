#pragma once

#include <string>
#include <vector>

#include "mmas/model.hpp"
#include "mmas/vehicle.hpp"

namespace mmas {

// Built-in parameterized families usable from the CLI and the test suites.
//   vehicle  - coupled lateral-roll model over the six-parameter box
//   diag2    - diag(m1, m2), both entries monotone, one shared template pair
//   rot2     - [[m1, m2], [-m2, m1]], opposing directions across entries
//   parabola - single entry m^2 on [-1, 1], non-monotone
//   constant - fixed stable pair, all entries constant
//   coord    - curve pairs exercising the coordination conditions
struct NamedSystem {
    std::string name;
    std::string description;
    ParameterizedSystem system;
};

NamedSystem make_named_system(const std::string& name,
                              SignConvention signs = SignConvention::AsPrinted,
                              double vehicle_speed_mps = 50.0 / 3.6);

std::vector<std::string> named_system_names();

}  // namespace mmas
