#pragma once

#include <string>

#include "rcsbench/absorber.hpp"

namespace rcs {

// Plain-text stack description, one element per line, front of the stack
// first. '#' starts a comment. Recognised lines:
//
//   layer eps_r=<v> tan_delta=<v> [mu_r=<v>] d_mm=<v>
//   sheet r_ohm=<v> l_nh=<v> c_ff=<v> [free=0|1]
//   backing pec
//   backing free
//
// Exactly one backing line is required and it must come last. A sheet with
// free=1 is the element a fit run is allowed to tune.
LayerStack parse_stack(const std::string& text);
LayerStack load_stack(const std::string& path);

std::string format_stack(const LayerStack& stack);
void save_stack(const std::string& path, const LayerStack& stack);

} // namespace rcs
