#pragma once

#include <string>

#include "rcsbench/geometry.hpp"

namespace rcs {

// Scene description, one surface per line, '#' comments. Coating values are
// either the word "pec" or a path to a stack file (resolved against base_dir
// when relative). Recognised lines:
//
//   duct diameter_m=<v> length_m=<v> wall=<coating> termination=<coating>
//        [wall_rivet_fraction=<v>] [termination_rivet_fraction=<v>]
//   plate a_m=<v> b_m=<v> coating=<coating> [rivet_fraction=<v>]
//         [center_x=<v>] [center_y=<v>] [center_z=<v>]
//   sphere radius_m=<v> coating=<coating>
//          [center_x=<v>] [center_y=<v>] [center_z=<v>]
//   mesh path=<stl> coating=<coating> [scale=<v>] [rivet_fraction=<v>]
//
// Surface ids are assigned in file order. The returned scene has its
// acceleration structure built.
Scene parse_scene(const std::string& text, const std::string& base_dir);
Scene load_scene(const std::string& path);

} // namespace rcs
