#pragma once

#include <array>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rcsbench/absorber.hpp"
#include "rcsbench/rivet.hpp"
#include "rcsbench/vec3.hpp"

namespace rcs {

struct Ray {
    Vec3 origin;
    Vec3 dir;                                            // unit length
    double min_t = 1e-7;                                 // self-intersection guard, m
    double max_t = std::numeric_limits<double>::infinity();
};

struct Hit {
    double t = 0.0;
    Vec3 point;
    Vec3 normal; // unit, oriented so that normal . ray.dir <= 0
    int surface_id = -1;
};

// Rectangle centered at `center`, edges a and b along the given unit axes;
// the normal is axis_a x axis_b.
struct PlateShape {
    double a_m = 0.0, b_m = 0.0;
    Vec3 center{0.0, 0.0, 0.0};
    Vec3 axis_a{0.0, 1.0, 0.0};
    Vec3 axis_b{0.0, 0.0, 1.0};
};

// Open-ended side wall only; runs from `base` to `base + length*axis`.
struct CylinderShape {
    double diameter_m = 0.0, length_m = 0.0;
    Vec3 base{0.0, 0.0, 0.0};
    Vec3 axis{1.0, 0.0, 0.0};
};

struct DiscShape {
    double diameter_m = 0.0;
    Vec3 center{0.0, 0.0, 0.0};
    Vec3 normal{-1.0, 0.0, 0.0};
};

struct SphereShape {
    double radius_m = 0.0;
    Vec3 center{0.0, 0.0, 0.0};
};

struct TriMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
};

using Shape = std::variant<PlateShape, CylinderShape, DiscShape, SphereShape, TriMesh>;

// PEC when `stack` is empty; an optional homogenized rivet coverage modifies
// the reflection of either.
struct Coating {
    std::optional<LayerStack> stack;
    RivetLayout rivets{};

    bool is_pec() const { return !stack.has_value(); }
    static Coating pec() { return {}; }
    static Coating ras(LayerStack s) { Coating c; c.stack = std::move(s); return c; }
};

struct Surface {
    Shape shape;
    Coating coating;
    int id = 0;
    std::string name;
};

class Bvh; // built by build_bvh (bvh.hpp)

struct Scene {
    std::vector<Surface> surfaces;
    std::shared_ptr<const Bvh> bvh; // null until build_bvh

    const Surface& surface_by_id(int id) const;
};

// Grazing hits with |dir . normal| below this are treated as misses: they carry
// no tube energy and make the reflection basis ill-conditioned.
inline constexpr double tangency_eps = 1e-9;

struct Aabb {
    Vec3 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};
    Vec3 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity()};

    void grow(const Vec3& p);
    void grow(const Aabb& b);
    Vec3 extent() const { return hi - lo; }
    double half_area() const;
};

// Closed-form single-shape tests; `flip_normal_toward` orients the returned
// normal against the ray. Misses are empty optionals.
std::optional<Hit> intersect_shape(const Shape& shape, const Ray& ray);

Aabb shape_bounds(const Shape& shape);
Aabb triangle_bounds(const TriMesh& mesh, int tri);

// Bounding sphere of the whole scene (used for ray-grid sizing).
struct BoundingSphere {
    Vec3 center;
    double radius = 0.0;
};
BoundingSphere scene_bounds(const Scene& scene);

// Open aperture at the origin facing -x, side wall along +x, flat termination
// disc at x = length.
Scene make_duct(double diameter_m, double length_m, Coating wall_coating,
                Coating termination_coating);

// Nearest hit across all surfaces. Uses the BVH when present, otherwise an
// exhaustive scan; both return identical results.
std::optional<Hit> intersect(const Scene& scene, const Ray& ray);
std::optional<Hit> intersect_brute(const Scene& scene, const Ray& ray);

// Watertight ray-triangle test. Returns t, barycentrics unused by callers.
std::optional<double> intersect_triangle(const Ray& ray, const Vec3& a, const Vec3& b,
                                         const Vec3& c);

// Single-triangle hit with winding normal, orientation and tangency applied.
std::optional<Hit> intersect_mesh_triangle(const TriMesh& mesh, int tri, const Ray& ray);

} // namespace rcs
