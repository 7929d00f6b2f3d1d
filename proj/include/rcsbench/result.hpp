#pragma once

#include <vector>

#include "rcsbench/grids.hpp"
#include "rcsbench/vec3.hpp"

namespace rcs {

// One monostatic sample. `field` is the coherent far-field sum S in m^2 with
// sigma = 4*pi*|S|^2 / lambda^2; sigma_dbsm is clamped at sigma_floor_dbsm
// (the explicit floor marker for empty or fully absorbed returns).
struct RcsSample {
    double f_hz = 0.0;
    double theta_deg = 0.0;
    double phi_deg = 0.0;
    Polarization pol = Polarization::HH;
    Complex field{0.0, 0.0};
    double sigma_dbsm = sigma_floor_dbsm;
    double residual_energy = 0.0; // fraction still alive at the bounce cap (diagnostic)
};

struct RcsResult {
    std::vector<RcsSample> samples; // frequency-major, then phi, matching the grids
};

// sigma from a far-field sum, and the clamped dB form.
double sigma_from_field(Complex field, double f_hz);
double clamped_dbsm(double sigma_m2);

} // namespace rcs
