#include "rcsbench/bvh.hpp"

#include <algorithm>
#include <stdexcept>

namespace rcs {

namespace {

constexpr int max_leaf = 4;
constexpr int sah_buckets = 16;

double centroid_axis(const Vec3& c, int axis) {
    return axis == 0 ? c.x : (axis == 1 ? c.y : c.z);
}

// Conservative slab test; returns the entry distance or nothing. Division by a
// zero direction component is handled explicitly so grazing-origin cases stay
// conservative rather than producing NaNs.
std::optional<double> hit_box(const Aabb& b, const Ray& ray, double t_best) {
    double t0 = ray.min_t;
    double t1 = std::min(ray.max_t, t_best);
    const double lo[3] = {b.lo.x, b.lo.y, b.lo.z};
    const double hi[3] = {b.hi.x, b.hi.y, b.hi.z};
    const double o[3] = {ray.origin.x, ray.origin.y, ray.origin.z};
    const double d[3] = {ray.dir.x, ray.dir.y, ray.dir.z};
    for (int k = 0; k < 3; ++k) {
        if (d[k] == 0.0) {
            if (o[k] < lo[k] || o[k] > hi[k]) return std::nullopt;
            continue;
        }
        double ta = (lo[k] - o[k]) / d[k];
        double tb = (hi[k] - o[k]) / d[k];
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        if (t0 > t1) return std::nullopt;
    }
    return t0;
}

} // namespace

int Bvh::build_node(int begin, int end) {
    Node node;
    for (int i = begin; i < end; ++i) node.box.grow(prims_[i].box);
    int count = end - begin;
    int node_index = static_cast<int>(nodes_.size());
    nodes_.push_back(node);

    if (count <= max_leaf) {
        nodes_[node_index].first = begin;
        nodes_[node_index].count = count;
        return node_index;
    }

    Aabb cb;
    for (int i = begin; i < end; ++i) cb.grow(prims_[i].centroid);
    Vec3 ext = cb.extent();
    int axis = 0;
    if (ext.y > centroid_axis(ext, axis)) axis = 1;
    if (ext.z > centroid_axis(ext, axis)) axis = 2;
    double cmin = centroid_axis(cb.lo, axis);
    double cext = centroid_axis(ext, axis);

    int mid;
    if (cext <= 0.0) {
        mid = begin + count / 2; // coincident centroids: plain halving
    } else {
        // binned surface-area heuristic
        struct Bucket {
            int n = 0;
            Aabb box;
        } buckets[sah_buckets];
        auto bucket_of = [&](const PrimRef& p) {
            int i = static_cast<int>(sah_buckets * (centroid_axis(p.centroid, axis) - cmin) / cext);
            return std::clamp(i, 0, sah_buckets - 1);
        };
        for (int i = begin; i < end; ++i) {
            Bucket& bk = buckets[bucket_of(prims_[i])];
            bk.n += 1;
            bk.box.grow(prims_[i].box);
        }
        double best_cost = std::numeric_limits<double>::infinity();
        int best_split = -1;
        for (int s = 1; s < sah_buckets; ++s) {
            Aabb bl, br;
            int nl = 0, nr = 0;
            for (int i = 0; i < s; ++i) {
                if (buckets[i].n) bl.grow(buckets[i].box);
                nl += buckets[i].n;
            }
            for (int i = s; i < sah_buckets; ++i) {
                if (buckets[i].n) br.grow(buckets[i].box);
                nr += buckets[i].n;
            }
            if (nl == 0 || nr == 0) continue;
            double cost = bl.half_area() * nl + br.half_area() * nr;
            if (cost < best_cost) {
                best_cost = cost;
                best_split = s;
            }
        }
        if (best_split < 0) {
            mid = begin + count / 2;
        } else {
            auto it = std::stable_partition(
                prims_.begin() + begin, prims_.begin() + end,
                [&](const PrimRef& p) { return bucket_of(p) < best_split; });
            mid = static_cast<int>(it - prims_.begin());
            if (mid == begin || mid == end) mid = begin + count / 2;
        }
    }

    int left = build_node(begin, mid);
    int right = build_node(mid, end);
    nodes_[node_index].left = left;
    nodes_[node_index].right = right;
    return node_index;
}

Bvh Bvh::build(const Scene& scene) {
    Bvh bvh;
    for (int si = 0; si < static_cast<int>(scene.surfaces.size()); ++si) {
        const Shape& shape = scene.surfaces[si].shape;
        if (const auto* mesh = std::get_if<TriMesh>(&shape)) {
            for (int t = 0; t < static_cast<int>(mesh->triangles.size()); ++t) {
                Aabb b = triangle_bounds(*mesh, t);
                bvh.prims_.push_back({si, t, b, 0.5 * (b.lo + b.hi)});
            }
        } else {
            Aabb b = shape_bounds(shape);
            bvh.prims_.push_back({si, -1, b, 0.5 * (b.lo + b.hi)});
        }
    }
    if (bvh.prims_.empty()) throw std::invalid_argument("Bvh: empty scene");
    bvh.nodes_.reserve(2 * bvh.prims_.size());
    bvh.build_node(0, static_cast<int>(bvh.prims_.size()));
    return bvh;
}

std::optional<Hit> Bvh::traverse(const Scene& scene, const Ray& ray) const {
    std::optional<Hit> best;
    Ray r = ray;
    int stack[64];
    int sp = 0;
    stack[sp++] = 0;
    while (sp > 0) {
        int ni = stack[--sp];
        const Node& node = nodes_[ni];
        auto entry = hit_box(node.box, r, r.max_t);
        if (!entry) continue;
        if (node.count > 0) {
            for (int i = node.first; i < node.first + node.count; ++i) {
                const PrimRef& p = prims_[i];
                const Surface& s = scene.surfaces[p.surface_index];
                std::optional<Hit> h;
                if (p.tri < 0) {
                    h = intersect_shape(s.shape, r);
                } else {
                    h = intersect_mesh_triangle(std::get<TriMesh>(s.shape), p.tri, r);
                }
                if (h) {
                    h->surface_id = s.id;
                    best = h;
                    r.max_t = h->t;
                }
            }
        } else {
            auto tl = hit_box(nodes_[node.left].box, r, r.max_t);
            auto tr = hit_box(nodes_[node.right].box, r, r.max_t);
            if (tl && tr) {
                // near child on top of the stack
                if (*tl <= *tr) {
                    stack[sp++] = node.right;
                    stack[sp++] = node.left;
                } else {
                    stack[sp++] = node.left;
                    stack[sp++] = node.right;
                }
            } else if (tl) {
                stack[sp++] = node.left;
            } else if (tr) {
                stack[sp++] = node.right;
            }
        }
    }
    return best;
}

void build_bvh(Scene& scene) {
    scene.bvh = std::make_shared<const Bvh>(Bvh::build(scene));
}

std::optional<Hit> intersect(const Scene& scene, const Ray& ray) {
    if (scene.bvh) return scene.bvh->traverse(scene, ray);
    return intersect_brute(scene, ray);
}

} // namespace rcs
