#pragma once

#include "rcsbench/vec3.hpp"

namespace rcs {

// Homogenized fastener-head coverage on an absorbing surface. The positional
// configuration label is metadata only; the model sees just the area fraction.
struct RivetLayout {
    enum class Config { c1, c2, c3, custom };

    double head_diameter_m = 0.004;
    double countersink_deg = 90.0; // metadata
    double area_fraction = 0.0;
    Config label = Config::custom;
};

void validate(const RivetLayout& layout);

// Coherent area-weighted blend: Gamma_eff = (1 - f)*Gamma_ras + f*(-1). The
// conducting head is flush at the front reference plane, so its contribution
// is the bare-PEC value -1 regardless of angle and polarization.
Complex effective_reflection(Complex gamma_ras, const RivetLayout& layout);

// Head-area fraction of a rectangular rivet grid: pi*(d/2)^2 / (px*py).
double fraction_from_pattern(double head_diameter_m, double pitch_x_m, double pitch_y_m);

} // namespace rcs
