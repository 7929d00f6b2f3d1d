#include "rcsbench/scene_io.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "rcsbench/bvh.hpp"
#include "rcsbench/stack_io.hpp"
#include "rcsbench/stl_io.hpp"

namespace rcs {

namespace {

struct SceneLine {
    std::string kind;
    std::map<std::string, std::string> kv;
    std::size_t line_no = 0;
};

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw std::runtime_error("scene line " + std::to_string(line_no) + ": " + what);
}

std::vector<SceneLine> tokenize(const std::string& text) {
    std::vector<SceneLine> lines;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        SceneLine p;
        p.line_no = line_no;
        std::string tok;
        while (ls >> tok) {
            if (p.kind.empty()) {
                p.kind = tok;
                continue;
            }
            auto eq = tok.find('=');
            if (eq == std::string::npos) fail(line_no, "expected key=value, got '" + tok + "'");
            std::string key = tok.substr(0, eq);
            if (!p.kv.emplace(key, tok.substr(eq + 1)).second)
                fail(line_no, "duplicate key '" + key + "'");
        }
        if (!p.kind.empty()) lines.push_back(std::move(p));
    }
    return lines;
}

std::string take_str(SceneLine& p, const std::string& key) {
    auto it = p.kv.find(key);
    if (it == p.kv.end()) fail(p.line_no, "missing " + key);
    std::string v = it->second;
    p.kv.erase(it);
    return v;
}

double to_double(const std::string& v, std::size_t line_no, const std::string& key) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::invalid_argument&) {
        fail(line_no, "bad value for '" + key + "'");
    }
}

double take_num(SceneLine& p, const std::string& key) {
    return to_double(take_str(p, key), p.line_no, key);
}

double take_num_or(SceneLine& p, const std::string& key, double fallback) {
    auto it = p.kv.find(key);
    if (it == p.kv.end()) return fallback;
    double v = to_double(it->second, p.line_no, key);
    p.kv.erase(it);
    return v;
}

void expect_drained(const SceneLine& p) {
    if (!p.kv.empty()) fail(p.line_no, "unknown key '" + p.kv.begin()->first + "'");
}

std::string resolve(const std::string& path, const std::string& base_dir) {
    std::filesystem::path p(path);
    if (p.is_absolute() || base_dir.empty()) return path;
    return (std::filesystem::path(base_dir) / p).string();
}

Coating make_coating(const std::string& value, double rivet_fraction,
                     const std::string& base_dir) {
    Coating c;
    if (value != "pec") c.stack = load_stack(resolve(value, base_dir));
    c.rivets.area_fraction = rivet_fraction;
    return c;
}

Vec3 take_center(SceneLine& p) {
    return Vec3{take_num_or(p, "center_x", 0.0), take_num_or(p, "center_y", 0.0),
                take_num_or(p, "center_z", 0.0)};
}

} // namespace

Scene parse_scene(const std::string& text, const std::string& base_dir) {
    Scene scene;
    int next_id = 0;
    for (SceneLine& p : tokenize(text)) {
        if (p.kind == "duct") {
            double d = take_num(p, "diameter_m");
            double l = take_num(p, "length_m");
            std::string wall = take_str(p, "wall");
            std::string term = take_str(p, "termination");
            double wall_rf = take_num_or(p, "wall_rivet_fraction", 0.0);
            double term_rf = take_num_or(p, "termination_rivet_fraction", 0.0);
            expect_drained(p);
            Scene duct = make_duct(d, l, make_coating(wall, wall_rf, base_dir),
                                   make_coating(term, term_rf, base_dir));
            for (Surface& s : duct.surfaces) {
                s.id = next_id++;
                scene.surfaces.push_back(std::move(s));
            }
        } else if (p.kind == "plate") {
            PlateShape shape;
            shape.a_m = take_num(p, "a_m");
            shape.b_m = take_num(p, "b_m");
            shape.center = take_center(p);
            std::string coating = take_str(p, "coating");
            double rf = take_num_or(p, "rivet_fraction", 0.0);
            expect_drained(p);
            scene.surfaces.push_back(
                Surface{shape, make_coating(coating, rf, base_dir), next_id++, "plate"});
        } else if (p.kind == "sphere") {
            SphereShape shape;
            shape.radius_m = take_num(p, "radius_m");
            shape.center = take_center(p);
            std::string coating = take_str(p, "coating");
            expect_drained(p);
            scene.surfaces.push_back(
                Surface{shape, make_coating(coating, 0.0, base_dir), next_id++, "sphere"});
        } else if (p.kind == "mesh") {
            std::string path = take_str(p, "path");
            double scale = take_num_or(p, "scale", 1.0);
            std::string coating = take_str(p, "coating");
            double rf = take_num_or(p, "rivet_fraction", 0.0);
            expect_drained(p);
            StlLoadResult stl = load_stl(resolve(path, base_dir), scale);
            scene.surfaces.push_back(Surface{std::move(stl.mesh),
                                             make_coating(coating, rf, base_dir), next_id++,
                                             "mesh:" + path});
        } else {
            fail(p.line_no, "unknown surface '" + p.kind + "'");
        }
    }
    if (scene.surfaces.empty()) throw std::runtime_error("scene: no surfaces");
    build_bvh(scene);
    return scene;
}

Scene load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scene file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scene(buf.str(), std::filesystem::path(path).parent_path().string());
}

} // namespace rcs
