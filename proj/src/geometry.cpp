#include "rcsbench/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rcs {

namespace {

double comp(const Vec3& v, int k) { return k == 0 ? v.x : (k == 1 ? v.y : v.z); }

// Orients the shape normal against the ray and applies the tangency rule.
std::optional<Hit> finish_hit(const Ray& ray, double t, const Vec3& point, Vec3 normal) {
    double dn = dot(ray.dir, normal);
    if (dn > 0.0) {
        normal = -normal;
        dn = -dn;
    }
    if (std::abs(dn) < tangency_eps) return std::nullopt;
    return Hit{t, point, normal, -1};
}

std::optional<Hit> hit_plate(const PlateShape& p, const Ray& ray) {
    Vec3 n = normalized(cross(p.axis_a, p.axis_b));
    double denom = dot(ray.dir, n);
    if (std::abs(denom) < tangency_eps) return std::nullopt;
    double t = dot(p.center - ray.origin, n) / denom;
    if (t < ray.min_t || t > ray.max_t) return std::nullopt;
    Vec3 q = ray.origin + t * ray.dir;
    Vec3 rel = q - p.center;
    if (std::abs(dot(rel, p.axis_a)) > 0.5 * p.a_m) return std::nullopt;
    if (std::abs(dot(rel, p.axis_b)) > 0.5 * p.b_m) return std::nullopt;
    return finish_hit(ray, t, q, n);
}

std::optional<Hit> hit_disc(const DiscShape& d, const Ray& ray) {
    Vec3 n = normalized(d.normal);
    double denom = dot(ray.dir, n);
    if (std::abs(denom) < tangency_eps) return std::nullopt;
    double t = dot(d.center - ray.origin, n) / denom;
    if (t < ray.min_t || t > ray.max_t) return std::nullopt;
    Vec3 q = ray.origin + t * ray.dir;
    if (norm2(q - d.center) > 0.25 * d.diameter_m * d.diameter_m) return std::nullopt;
    return finish_hit(ray, t, q, n);
}

std::optional<Hit> hit_sphere(const SphereShape& s, const Ray& ray) {
    Vec3 oc = ray.origin - s.center;
    double b = dot(oc, ray.dir);
    double c = norm2(oc) - s.radius_m * s.radius_m;
    double disc = b * b - c;
    if (disc <= 0.0) return std::nullopt;
    double sq = std::sqrt(disc);
    for (double t : {-b - sq, -b + sq}) {
        if (t < ray.min_t || t > ray.max_t) continue;
        Vec3 q = ray.origin + t * ray.dir;
        Vec3 n = normalized(q - s.center);
        if (auto h = finish_hit(ray, t, q, n)) return h;
    }
    return std::nullopt;
}

std::optional<Hit> hit_cylinder(const CylinderShape& cyl, const Ray& ray) {
    Vec3 a = normalized(cyl.axis);
    double r = 0.5 * cyl.diameter_m;
    Vec3 q = ray.origin - cyl.base;
    Vec3 dp = ray.dir - dot(ray.dir, a) * a;
    Vec3 qp = q - dot(q, a) * a;
    double A = norm2(dp);
    if (A < 1e-30) return std::nullopt; // parallel to the axis: no side-wall hit
    double B = dot(dp, qp);
    double C = norm2(qp) - r * r;
    double disc = B * B - A * C;
    if (disc <= 0.0) return std::nullopt;
    double sq = std::sqrt(disc);
    for (double t : {(-B - sq) / A, (-B + sq) / A}) {
        if (t < ray.min_t || t > ray.max_t) continue;
        double s = dot(q + t * ray.dir, a);
        if (s < 0.0 || s > cyl.length_m) continue;
        Vec3 p = ray.origin + t * ray.dir;
        Vec3 n = normalized(p - cyl.base - s * a);
        if (auto h = finish_hit(ray, t, p, n)) return h;
    }
    return std::nullopt;
}

std::optional<Hit> hit_mesh(const TriMesh& mesh, const Ray& ray) {
    std::optional<Hit> best;
    Ray r = ray;
    for (int i = 0; i < static_cast<int>(mesh.triangles.size()); ++i) {
        if (auto h = intersect_mesh_triangle(mesh, i, r)) {
            best = h;
            r.max_t = h->t;
        }
    }
    return best;
}

} // namespace

std::optional<Hit> intersect_mesh_triangle(const TriMesh& mesh, int tri, const Ray& ray) {
    const auto& idx = mesh.triangles[tri];
    const Vec3& a = mesh.vertices[idx[0]];
    const Vec3& b = mesh.vertices[idx[1]];
    const Vec3& c = mesh.vertices[idx[2]];
    auto t = intersect_triangle(ray, a, b, c);
    if (!t) return std::nullopt;
    Vec3 n = normalized(cross(b - a, c - a));
    return finish_hit(ray, *t, ray.origin + *t * ray.dir, n);
}

std::optional<double> intersect_triangle(const Ray& ray, const Vec3& va, const Vec3& vb,
                                         const Vec3& vc) {
    // Watertight test: translate to the ray origin, permute so the largest
    // direction component is z, shear to a unit-z ray, then evaluate 2D edge
    // functions whose signs decide containment without cracks along shared edges.
    const Vec3& d = ray.dir;
    int kz = 0;
    if (std::abs(comp(d, 1)) > std::abs(comp(d, kz))) kz = 1;
    if (std::abs(comp(d, 2)) > std::abs(comp(d, kz))) kz = 2;
    int kx = (kz + 1) % 3;
    int ky = (kx + 1) % 3;
    if (comp(d, kz) < 0.0) std::swap(kx, ky);

    double sx = comp(d, kx) / comp(d, kz);
    double sy = comp(d, ky) / comp(d, kz);
    double sz = 1.0 / comp(d, kz);

    Vec3 a = va - ray.origin, b = vb - ray.origin, c = vc - ray.origin;
    double ax = comp(a, kx) - sx * comp(a, kz);
    double ay = comp(a, ky) - sy * comp(a, kz);
    double bx = comp(b, kx) - sx * comp(b, kz);
    double by = comp(b, ky) - sy * comp(b, kz);
    double cx = comp(c, kx) - sx * comp(c, kz);
    double cy = comp(c, ky) - sy * comp(c, kz);

    double u = cx * by - cy * bx;
    double v = ax * cy - ay * cx;
    double w = bx * ay - by * ax;

    if (u == 0.0 || v == 0.0 || w == 0.0) {
        // fall back to extended precision on the knife edge
        long double uu = (long double)cx * by - (long double)cy * bx;
        long double vv = (long double)ax * cy - (long double)ay * cx;
        long double ww = (long double)bx * ay - (long double)by * ax;
        u = static_cast<double>(uu);
        v = static_cast<double>(vv);
        w = static_cast<double>(ww);
    }
    if ((u < 0.0 || v < 0.0 || w < 0.0) && (u > 0.0 || v > 0.0 || w > 0.0))
        return std::nullopt;
    double det = u + v + w;
    if (det == 0.0) return std::nullopt;

    double az = sz * comp(a, kz);
    double bz = sz * comp(b, kz);
    double cz = sz * comp(c, kz);
    double t = (u * az + v * bz + w * cz) / det;
    if (t < ray.min_t || t > ray.max_t) return std::nullopt;
    return t;
}

std::optional<Hit> intersect_shape(const Shape& shape, const Ray& ray) {
    if (std::abs(norm(ray.dir) - 1.0) > 1e-12)
        throw std::invalid_argument("intersect: ray direction must be unit length");
    return std::visit(
        [&](const auto& s) -> std::optional<Hit> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PlateShape>) return hit_plate(s, ray);
            else if constexpr (std::is_same_v<T, CylinderShape>) return hit_cylinder(s, ray);
            else if constexpr (std::is_same_v<T, DiscShape>) return hit_disc(s, ray);
            else if constexpr (std::is_same_v<T, SphereShape>) return hit_sphere(s, ray);
            else return hit_mesh(s, ray);
        },
        shape);
}

void Aabb::grow(const Vec3& p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
}

void Aabb::grow(const Aabb& b) {
    grow(b.lo);
    grow(b.hi);
}

double Aabb::half_area() const {
    Vec3 e = extent();
    if (e.x < 0.0 || e.y < 0.0 || e.z < 0.0) return 0.0;
    return e.x * e.y + e.y * e.z + e.z * e.x;
}

Aabb triangle_bounds(const TriMesh& mesh, int tri) {
    Aabb b;
    for (int k = 0; k < 3; ++k) b.grow(mesh.vertices[mesh.triangles[tri][k]]);
    return b;
}

namespace {

Aabb circle_bounds(const Vec3& center, const Vec3& unit_normal, double r) {
    // per-axis extent of a circle: r*sqrt(1 - n_k^2)
    Vec3 e{r * std::sqrt(std::max(0.0, 1.0 - unit_normal.x * unit_normal.x)),
           r * std::sqrt(std::max(0.0, 1.0 - unit_normal.y * unit_normal.y)),
           r * std::sqrt(std::max(0.0, 1.0 - unit_normal.z * unit_normal.z))};
    Aabb b;
    b.grow(center - e);
    b.grow(center + e);
    return b;
}

} // namespace

Aabb shape_bounds(const Shape& shape) {
    return std::visit(
        [](const auto& s) -> Aabb {
            using T = std::decay_t<decltype(s)>;
            Aabb b;
            if constexpr (std::is_same_v<T, PlateShape>) {
                for (double su : {-0.5, 0.5})
                    for (double sv : {-0.5, 0.5})
                        b.grow(s.center + su * s.a_m * s.axis_a + sv * s.b_m * s.axis_b);
            } else if constexpr (std::is_same_v<T, CylinderShape>) {
                Vec3 a = normalized(s.axis);
                b.grow(circle_bounds(s.base, a, 0.5 * s.diameter_m));
                b.grow(circle_bounds(s.base + s.length_m * a, a, 0.5 * s.diameter_m));
            } else if constexpr (std::is_same_v<T, DiscShape>) {
                b = circle_bounds(s.center, normalized(s.normal), 0.5 * s.diameter_m);
            } else if constexpr (std::is_same_v<T, SphereShape>) {
                Vec3 r{s.radius_m, s.radius_m, s.radius_m};
                b.grow(s.center - r);
                b.grow(s.center + r);
            } else {
                for (const Vec3& v : s.vertices) b.grow(v);
            }
            return b;
        },
        shape);
}

BoundingSphere scene_bounds(const Scene& scene) {
    Aabb box;
    for (const auto& s : scene.surfaces) box.grow(shape_bounds(s.shape));
    if (scene.surfaces.empty()) return {Vec3{}, 0.0};
    Vec3 c = 0.5 * (box.lo + box.hi);
    return {c, 0.5 * norm(box.extent())};
}

const Surface& Scene::surface_by_id(int id) const {
    for (const auto& s : surfaces)
        if (s.id == id) return s;
    throw std::out_of_range("Scene: unknown surface id");
}

Scene make_duct(double diameter_m, double length_m, Coating wall_coating,
                Coating termination_coating) {
    if (!(diameter_m > 0.0) || !(length_m > 0.0))
        throw std::invalid_argument("make_duct: diameter and length must be > 0");
    Scene scene;
    CylinderShape wall{diameter_m, length_m, Vec3{0.0, 0.0, 0.0}, Vec3{1.0, 0.0, 0.0}};
    DiscShape term{diameter_m, Vec3{length_m, 0.0, 0.0}, Vec3{-1.0, 0.0, 0.0}};
    scene.surfaces.push_back({wall, std::move(wall_coating), 0, "wall"});
    scene.surfaces.push_back({term, std::move(termination_coating), 1, "termination"});
    return scene;
}

std::optional<Hit> intersect_brute(const Scene& scene, const Ray& ray) {
    std::optional<Hit> best;
    Ray r = ray;
    for (const auto& s : scene.surfaces) {
        if (auto h = intersect_shape(s.shape, r)) {
            h->surface_id = s.id;
            best = h;
            r.max_t = h->t;
        }
    }
    return best;
}

} // namespace rcs
