#include "rcsbench/rivet.hpp"

#include <cmath>
#include <stdexcept>

#include "rcsbench/constants.hpp"

namespace rcs {

void validate(const RivetLayout& layout) {
    if (!(layout.head_diameter_m > 0.0))
        throw std::invalid_argument("RivetLayout: head diameter must be > 0");
    if (!(layout.area_fraction >= 0.0 && layout.area_fraction <= 1.0))
        throw std::invalid_argument("RivetLayout: area fraction must be in [0, 1]");
}

Complex effective_reflection(Complex gamma_ras, const RivetLayout& layout) {
    validate(layout);
    if (!(std::abs(gamma_ras) <= 1.0 + 1e-9))
        throw std::domain_error("effective_reflection: |gamma_ras| must be <= 1");
    double f = layout.area_fraction;
    if (f == 0.0) return gamma_ras;           // exact passthrough
    if (f == 1.0) return {-1.0, 0.0};         // full PEC coverage
    return (1.0 - f) * gamma_ras + f * Complex(-1.0, 0.0);
}

double fraction_from_pattern(double head_diameter_m, double pitch_x_m, double pitch_y_m) {
    if (!(head_diameter_m > 0.0))
        throw std::domain_error("fraction_from_pattern: head diameter must be > 0");
    if (!(pitch_x_m > head_diameter_m && pitch_y_m > head_diameter_m))
        throw std::domain_error("fraction_from_pattern: pitch must exceed the head diameter");
    double r = 0.5 * head_diameter_m;
    return pi * r * r / (pitch_x_m * pitch_y_m);
}

} // namespace rcs
