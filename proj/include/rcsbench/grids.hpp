#pragma once

#include <string>
#include <vector>

#include "rcsbench/constants.hpp"

namespace rcs {

// Frequency sample points in Hz, strictly increasing, all positive.
struct FrequencyGrid {
    std::vector<double> points_hz;

    explicit FrequencyGrid(std::vector<double> points);
    // Inclusive [start, stop] with uniform step. start == stop yields one point.
    static FrequencyGrid from_range(double start_hz, double stop_hz, double step_hz);
};

// Azimuth sweep at a fixed elevation. phi points in degrees, strictly increasing.
struct AngleGrid {
    double theta_deg = 0.0;
    std::vector<double> phi_points_deg;

    AngleGrid(double theta_deg, std::vector<double> phi_points);
    static AngleGrid from_range(double theta_deg, double phi_start, double phi_stop,
                                double phi_step);
};

// HH/VV label scene sweeps (transmit/receive pair); TE/TM label planar-stack
// incidence (field perpendicular / parallel to the plane of incidence).
enum class Polarization { HH, VV, TE, TM };

bool is_scene_pol(Polarization p);
bool is_stack_pol(Polarization p);
std::string pol_name(Polarization p);
Polarization parse_pol(const std::string& name);

// c0 / f. Throws std::domain_error for f <= 0.
double wavelength(double f_hz);

// 10*log10(sigma / 1 m^2). Throws std::domain_error for sigma <= 0; callers
// that need a plotting floor clamp before calling (see sigma_floor_dbsm).
double to_dbsm(double sigma_m2);

} // namespace rcs
