#pragma once

#include "rcsbench/geometry.hpp"
#include "rcsbench/result.hpp"

namespace rcs {

// Closed-form oracles: coated-plate physical optics and the geometric-optics
// sphere. Used for calibration, acceptance gates, and fast flat-panel sweeps.

struct PlateSpec {
    double a_m = 0.0; // edge along the scan axis
    double b_m = 0.0;
    Coating coating;
};

// Principal-plane monostatic pattern:
//   sigma(theta) = (4*pi*a^2*b^2/lambda^2) * |Gamma(f,theta,pol)|^2
//                  * cos^2(theta) * sinc^2(k*a*sin(theta))
// with sinc(x) = sin(x)/x and theta taken from the grid's phi values (degrees
// off broadside). HH scans in the plane of incidence (TM on the panel), VV
// perpendicular to it (TE); TE/TM may also be passed directly. The rivet blend
// applies when the coating carries a nonzero area fraction.
RcsResult plate_rcs(const PlateSpec& plate, double f_hz, const AngleGrid& scan,
                    Polarization pol);

// Reflection coefficient the plate model uses at one angle (exposed for the
// coating-factorization property and the SBR bounce tests).
Complex plate_gamma(const Coating& coating, double f_hz, double theta_deg, Polarization pol);

// GO sphere: pi*r^2, angle-independent. Valid for r >> lambda (not enforced).
double sphere_rcs_go(double radius_m);

} // namespace rcs
