#include "rcsbench/grids.hpp"

#include <cmath>
#include <stdexcept>

namespace rcs {

namespace {

std::vector<double> uniform_points(double start, double stop, double step,
                                   const char* what) {
    if (!(step > 0.0)) throw std::invalid_argument(std::string(what) + ": step must be > 0");
    if (stop < start) throw std::invalid_argument(std::string(what) + ": stop < start");
    if (stop == start) return {start};
    double span = stop - start;
    auto n = static_cast<std::size_t>(std::floor(span / step + 0.5)) + 1;
    double end = start + static_cast<double>(n - 1) * step;
    double tol = 1e-9 * std::max({1.0, std::abs(start), std::abs(stop)});
    if (std::abs(end - stop) > tol)
        throw std::invalid_argument(std::string(what) + ": step does not divide the range");
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = start + static_cast<double>(i) * step;
    pts.back() = stop;  // keep the endpoint exact
    return pts;
}

} // namespace

FrequencyGrid::FrequencyGrid(std::vector<double> points) : points_hz(std::move(points)) {
    if (points_hz.empty()) throw std::invalid_argument("FrequencyGrid: empty");
    double prev = 0.0;
    for (double f : points_hz) {
        if (!(f > 0.0)) throw std::invalid_argument("FrequencyGrid: frequencies must be > 0");
        if (f <= prev) throw std::invalid_argument("FrequencyGrid: not strictly increasing");
        prev = f;
    }
}

FrequencyGrid FrequencyGrid::from_range(double start_hz, double stop_hz, double step_hz) {
    return FrequencyGrid(uniform_points(start_hz, stop_hz, step_hz, "FrequencyGrid"));
}

AngleGrid::AngleGrid(double theta, std::vector<double> phi_points)
    : theta_deg(theta), phi_points_deg(std::move(phi_points)) {
    if (theta_deg < 0.0 || theta_deg >= 90.0)
        throw std::invalid_argument("AngleGrid: theta must be in [0, 90)");
    if (phi_points_deg.empty()) throw std::invalid_argument("AngleGrid: empty phi list");
    for (std::size_t i = 1; i < phi_points_deg.size(); ++i)
        if (phi_points_deg[i] <= phi_points_deg[i - 1])
            throw std::invalid_argument("AngleGrid: phi not strictly increasing");
}

AngleGrid AngleGrid::from_range(double theta_deg, double phi_start, double phi_stop,
                                double phi_step) {
    return AngleGrid(theta_deg, uniform_points(phi_start, phi_stop, phi_step, "AngleGrid"));
}

bool is_scene_pol(Polarization p) { return p == Polarization::HH || p == Polarization::VV; }
bool is_stack_pol(Polarization p) { return p == Polarization::TE || p == Polarization::TM; }

std::string pol_name(Polarization p) {
    switch (p) {
        case Polarization::HH: return "HH";
        case Polarization::VV: return "VV";
        case Polarization::TE: return "TE";
        case Polarization::TM: return "TM";
    }
    return "?";
}

Polarization parse_pol(const std::string& name) {
    if (name == "HH" || name == "hh") return Polarization::HH;
    if (name == "VV" || name == "vv") return Polarization::VV;
    if (name == "TE" || name == "te") return Polarization::TE;
    if (name == "TM" || name == "tm") return Polarization::TM;
    throw std::invalid_argument("unknown polarization: " + name);
}

double wavelength(double f_hz) {
    if (!(f_hz > 0.0)) throw std::domain_error("wavelength: frequency must be > 0");
    return c0 / f_hz;
}

double to_dbsm(double sigma_m2) {
    if (!(sigma_m2 > 0.0)) throw std::domain_error("to_dbsm: sigma must be > 0");
    return 10.0 * std::log10(sigma_m2);
}

} // namespace rcs
