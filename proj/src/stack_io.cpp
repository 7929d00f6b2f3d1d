#include "rcsbench/stack_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace rcs {

namespace {

struct ParsedLine {
    std::string kind;
    std::vector<std::string> words;
    std::map<std::string, double> kv;
    std::size_t line_no = 0;
};

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw std::runtime_error("stack line " + std::to_string(line_no) + ": " + what);
}

double take(ParsedLine& p, const std::string& key) {
    auto it = p.kv.find(key);
    if (it == p.kv.end()) fail(p.line_no, "missing " + key);
    double v = it->second;
    p.kv.erase(it);
    return v;
}

double take_or(ParsedLine& p, const std::string& key, double fallback) {
    auto it = p.kv.find(key);
    if (it == p.kv.end()) return fallback;
    double v = it->second;
    p.kv.erase(it);
    return v;
}

void expect_drained(const ParsedLine& p) {
    if (!p.kv.empty()) fail(p.line_no, "unknown key '" + p.kv.begin()->first + "'");
}

std::vector<ParsedLine> tokenize(const std::string& text) {
    std::vector<ParsedLine> lines;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        ParsedLine p;
        p.line_no = line_no;
        std::string tok;
        while (ls >> tok) {
            auto eq = tok.find('=');
            if (p.kind.empty()) {
                if (eq != std::string::npos) fail(line_no, "expected element kind first");
                p.kind = tok;
            } else if (eq == std::string::npos) {
                p.words.push_back(tok);
            } else {
                std::string key = tok.substr(0, eq);
                std::string val = tok.substr(eq + 1);
                try {
                    std::size_t pos = 0;
                    double v = std::stod(val, &pos);
                    if (pos != val.size()) throw std::invalid_argument("trailing");
                    if (!p.kv.emplace(key, v).second) fail(line_no, "duplicate key '" + key + "'");
                } catch (const std::invalid_argument&) {
                    fail(line_no, "bad value for '" + key + "'");
                }
            }
        }
        if (!p.kind.empty()) lines.push_back(std::move(p));
    }
    return lines;
}

} // namespace

LayerStack parse_stack(const std::string& text) {
    LayerStack stack;
    bool have_backing = false;
    for (ParsedLine& p : tokenize(text)) {
        if (have_backing) fail(p.line_no, "element after backing");
        if (p.kind == "layer") {
            Material m;
            m.eps_r = take(p, "eps_r");
            m.tan_delta = take(p, "tan_delta");
            m.mu_r = take_or(p, "mu_r", 1.0);
            double d_mm = take(p, "d_mm");
            expect_drained(p);
            stack.elements.push_back(LayerElement{m, d_mm * 1e-3});
        } else if (p.kind == "sheet") {
            SheetImpedance z;
            z.r_ohm = take(p, "r_ohm");
            z.l_h = take(p, "l_nh") * 1e-9;
            z.c_f = take(p, "c_ff") * 1e-15;
            bool free_sheet = take_or(p, "free", 0.0) != 0.0;
            expect_drained(p);
            stack.elements.push_back(SheetElement{z, free_sheet});
        } else if (p.kind == "backing") {
            expect_drained(p);
            if (p.words.size() != 1) fail(p.line_no, "backing needs pec|free");
            if (p.words[0] == "pec") stack.backing = Backing::pec;
            else if (p.words[0] == "free") stack.backing = Backing::free_space;
            else fail(p.line_no, "backing needs pec|free");
            have_backing = true;
        } else {
            fail(p.line_no, "unknown element '" + p.kind + "'");
        }
        if (p.kind != "backing" && !p.words.empty())
            fail(p.line_no, "stray token '" + p.words.front() + "'");
    }
    if (!have_backing)
        throw std::runtime_error("stack: missing backing line");
    validate(stack);
    return stack;
}

LayerStack load_stack(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stack file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_stack(buf.str());
}

std::string format_stack(const LayerStack& stack) {
    std::ostringstream out;
    char buf[256];
    for (const StackElement& e : stack.elements) {
        if (const auto* layer = std::get_if<LayerElement>(&e)) {
            std::snprintf(buf, sizeof buf,
                          "layer eps_r=%.17g tan_delta=%.17g mu_r=%.17g d_mm=%.17g\n",
                          layer->material.eps_r, layer->material.tan_delta,
                          layer->material.mu_r, layer->thickness_m * 1e3);
        } else {
            const auto& sheet = std::get<SheetElement>(e);
            std::snprintf(buf, sizeof buf,
                          "sheet r_ohm=%.17g l_nh=%.17g c_ff=%.17g free=%d\n",
                          sheet.impedance.r_ohm, sheet.impedance.l_h * 1e9,
                          sheet.impedance.c_f * 1e15, sheet.free ? 1 : 0);
        }
        out << buf;
    }
    out << "backing " << (stack.backing == Backing::pec ? "pec" : "free") << '\n';
    return out.str();
}

void save_stack(const std::string& path, const LayerStack& stack) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << format_stack(stack);
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace rcs
