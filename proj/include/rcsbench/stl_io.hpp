#pragma once

#include <string>

#include "rcsbench/geometry.hpp"

namespace rcs {

struct StlLoadResult {
    TriMesh mesh;
    int dropped_degenerate = 0; // zero-area or duplicate-vertex triangles removed
    std::string solid_name;     // ASCII solid name when present
};

// Reads ASCII or binary STL (auto-detected). Vertices are deduplicated within
// 1e-9 m, degenerate triangles dropped and counted, normals recomputed from
// winding on use. `scale` multiplies all coordinates (STL carries no units;
// pass 1e-3 for millimeter files). Malformed input throws std::runtime_error
// with the byte offset; an empty cleaned mesh throws std::domain_error.
StlLoadResult load_stl(const std::string& path, double scale = 1.0);

// Little-endian binary STL with per-facet normals recomputed from winding.
void save_stl_binary(const std::string& path, const TriMesh& mesh);

} // namespace rcs
