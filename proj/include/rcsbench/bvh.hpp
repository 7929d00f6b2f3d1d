#pragma once

#include "rcsbench/geometry.hpp"

namespace rcs {

// Binary BVH over every triangle and every analytic primitive of a scene.
// Built once, immutable afterwards; traversal is lock-free and concurrent.
class Bvh {
public:
    static Bvh build(const Scene& scene);

    std::optional<Hit> traverse(const Scene& scene, const Ray& ray) const;

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t prim_count() const { return prims_.size(); }

private:
    struct PrimRef {
        int surface_index = -1; // index into scene.surfaces
        int tri = -1;           // triangle index, or -1 for an analytic shape
        Aabb box;
        Vec3 centroid;
    };

    struct Node {
        Aabb box;
        int left = -1;
        int right = -1;
        int first = 0; // leaf range into prims_
        int count = 0; // 0 for inner nodes
    };

    int build_node(int begin, int end);

    std::vector<Node> nodes_;
    std::vector<PrimRef> prims_;
};

// Attaches a freshly built index to the scene.
void build_bvh(Scene& scene);

} // namespace rcs
