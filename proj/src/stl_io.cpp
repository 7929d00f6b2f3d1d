#include "rcsbench/stl_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace rcs {

namespace {

constexpr double weld_eps = 1e-9; // m

[[noreturn]] void parse_fail(const std::string& path, std::size_t offset, const std::string& why) {
    throw std::runtime_error("STL parse error in " + path + " at byte " +
                             std::to_string(offset) + ": " + why);
}

// Welds vertices within weld_eps using a quantized spatial map with a
// neighborhood probe, so near-coincident seam vertices collapse reliably.
class VertexWelder {
public:
    int add(const Vec3& v, TriMesh& mesh) {
        auto key = keyed(v);
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy)
                for (long long dz = -1; dz <= 1; ++dz) {
                    auto it = map_.find({std::get<0>(key) + dx, std::get<1>(key) + dy,
                                         std::get<2>(key) + dz});
                    if (it == map_.end()) continue;
                    for (int idx : it->second)
                        if (norm(mesh.vertices[idx] - v) <= weld_eps) return idx;
                }
        int idx = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back(v);
        map_[key].push_back(idx);
        return idx;
    }

private:
    using Key = std::tuple<long long, long long, long long>;
    static Key keyed(const Vec3& v) {
        return {llround(v.x / weld_eps), llround(v.y / weld_eps), llround(v.z / weld_eps)};
    }
    std::map<Key, std::vector<int>> map_;
};

struct MeshBuilder {
    TriMesh mesh;
    VertexWelder welder;
    int dropped = 0;

    void add_triangle(const Vec3& a, const Vec3& b, const Vec3& c) {
        int ia = welder.add(a, mesh);
        int ib = welder.add(b, mesh);
        int ic = welder.add(c, mesh);
        if (ia == ib || ib == ic || ia == ic ||
            norm(cross(mesh.vertices[ib] - mesh.vertices[ia],
                       mesh.vertices[ic] - mesh.vertices[ia])) == 0.0) {
            ++dropped;
            return;
        }
        mesh.triangles.push_back({ia, ib, ic});
    }
};

bool looks_binary(const std::string& bytes) {
    if (bytes.size() < 84) return false;
    std::uint32_t n;
    std::memcpy(&n, bytes.data() + 80, 4);
    return bytes.size() == 84 + static_cast<std::size_t>(n) * 50;
}

StlLoadResult parse_binary(const std::string& path, const std::string& bytes, double scale) {
    std::uint32_t n;
    std::memcpy(&n, bytes.data() + 80, 4);
    MeshBuilder mb;
    std::size_t off = 84;
    for (std::uint32_t i = 0; i < n; ++i, off += 50) {
        float f[12];
        std::memcpy(f, bytes.data() + off, 48); // normal + 3 vertices
        Vec3 v[3];
        for (int k = 0; k < 3; ++k)
            v[k] = {scale * f[3 + 3 * k], scale * f[4 + 3 * k], scale * f[5 + 3 * k]};
        for (int k = 0; k < 3; ++k)
            for (double x : {v[k].x, v[k].y, v[k].z})
                if (!std::isfinite(x)) parse_fail(path, off, "non-finite vertex");
        mb.add_triangle(v[0], v[1], v[2]);
    }
    return {std::move(mb.mesh), mb.dropped, ""};
}

StlLoadResult parse_ascii(const std::string& path, const std::string& bytes, double scale) {
    std::istringstream in(bytes);
    std::string tok;
    auto offset = [&]() -> std::size_t {
        auto p = in.tellg();
        return p < 0 ? bytes.size() : static_cast<std::size_t>(p);
    };
    auto expect = [&](const char* want) {
        if (!(in >> tok) || tok != want)
            parse_fail(path, offset(), std::string("expected '") + want + "', got '" + tok + "'");
    };

    expect("solid");
    std::string name;
    std::getline(in, name);
    while (!name.empty() && (name.front() == ' ' || name.front() == '\t')) name.erase(0, 1);

    MeshBuilder mb;
    while (in >> tok) {
        if (tok == "endsolid") {
            std::getline(in, tok);
            return {std::move(mb.mesh), mb.dropped, name};
        }
        if (tok != "facet") parse_fail(path, offset(), "expected 'facet' or 'endsolid', got '" + tok + "'");
        expect("normal");
        double dummy;
        for (int k = 0; k < 3; ++k)
            if (!(in >> dummy)) parse_fail(path, offset(), "bad facet normal");
        expect("outer");
        expect("loop");
        Vec3 v[3];
        for (int k = 0; k < 3; ++k) {
            expect("vertex");
            if (!(in >> v[k].x >> v[k].y >> v[k].z))
                parse_fail(path, offset(), "bad vertex coordinates");
            v[k] = scale * v[k];
        }
        expect("endloop");
        expect("endfacet");
        mb.add_triangle(v[0], v[1], v[2]);
    }
    parse_fail(path, offset(), "missing 'endsolid'");
}

} // namespace

StlLoadResult load_stl(const std::string& path, double scale) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open STL file: " + path);
    std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());

    StlLoadResult out = looks_binary(bytes) ? parse_binary(path, bytes, scale)
                                            : parse_ascii(path, bytes, scale);
    if (out.mesh.triangles.empty())
        throw std::domain_error("STL mesh is empty after cleanup: " + path);
    return out;
}

void save_stl_binary(const std::string& path, const TriMesh& mesh) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    char header[80] = {0};
    std::snprintf(header, sizeof(header), "binary stl, %zu triangles", mesh.triangles.size());
    f.write(header, 80);
    std::uint32_t n = static_cast<std::uint32_t>(mesh.triangles.size());
    f.write(reinterpret_cast<const char*>(&n), 4);
    for (const auto& tri : mesh.triangles) {
        const Vec3& a = mesh.vertices[tri[0]];
        const Vec3& b = mesh.vertices[tri[1]];
        const Vec3& c = mesh.vertices[tri[2]];
        Vec3 nr = normalized(cross(b - a, c - a));
        float rec[12] = {
            static_cast<float>(nr.x), static_cast<float>(nr.y), static_cast<float>(nr.z),
            static_cast<float>(a.x),  static_cast<float>(a.y),  static_cast<float>(a.z),
            static_cast<float>(b.x),  static_cast<float>(b.y),  static_cast<float>(b.z),
            static_cast<float>(c.x),  static_cast<float>(c.y),  static_cast<float>(c.z)};
        f.write(reinterpret_cast<const char*>(rec), 48);
        std::uint16_t attr = 0;
        f.write(reinterpret_cast<const char*>(&attr), 2);
    }
    if (!f) throw std::runtime_error("write failed: " + path);
}

} // namespace rcs
