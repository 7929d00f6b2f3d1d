#include "rcsbench/result.hpp"

#include <cmath>

namespace rcs {

double sigma_from_field(Complex field, double f_hz) {
    double lam = wavelength(f_hz);
    return 4.0 * pi * std::norm(field) / (lam * lam);
}

double clamped_dbsm(double sigma_m2) {
    if (!(sigma_m2 > 0.0)) return sigma_floor_dbsm;
    double db = 10.0 * std::log10(sigma_m2);
    return db < sigma_floor_dbsm ? sigma_floor_dbsm : db;
}

} // namespace rcs
