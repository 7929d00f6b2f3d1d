#include "rcsbench/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace rcs {

const char* const kCsvHeader = "freq_hz,theta_deg,phi_deg,pol,sigma_dbsm,field_re,field_im";

void write_csv(const std::string& path, const RcsResult& result) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << kCsvHeader << '\n';
    char buf[512];
    for (const RcsSample& s : result.samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%s,%.17g,%.17g,%.17g\n",
                      s.f_hz, s.theta_deg, s.phi_deg, pol_name(s.pol).c_str(),
                      s.sigma_dbsm, s.field.real(), s.field.imag());
        out << buf;
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("csv line " + std::to_string(line_no) +
                                 ": bad numeric field '" + s + "'");
    }
}

} // namespace

RcsResult read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);

    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty csv: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader)
        throw std::runtime_error("csv header mismatch in " + path);

    RcsResult result;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto f = split_fields(line);
        if (f.size() != 7)
            throw std::runtime_error("csv line " + std::to_string(line_no) +
                                     ": expected 7 fields, got " + std::to_string(f.size()));
        RcsSample s;
        s.f_hz = parse_double(f[0], line_no);
        s.theta_deg = parse_double(f[1], line_no);
        s.phi_deg = parse_double(f[2], line_no);
        s.pol = parse_pol(f[3]);
        s.sigma_dbsm = parse_double(f[4], line_no);
        s.field = Complex{parse_double(f[5], line_no), parse_double(f[6], line_no)};
        result.samples.push_back(s);
    }
    return result;
}

} // namespace rcs
