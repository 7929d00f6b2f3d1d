#pragma once

#include <vector>

#include "rcsbench/result.hpp"

namespace rcs {

// Median of a sample vector using the lower-of-two-middles rule: for even n
// the element at sorted index (n-1)/2 is returned, so the result is always a
// member of the input set. Throws std::domain_error on an empty vector.
double median_lower(std::vector<double> values);

struct MedianReport {
    double f_hz = 0.0;
    Polarization pol = Polarization::HH;
    double phi_lo_deg = 0.0;
    double phi_hi_deg = 0.0;
    std::size_t count = 0;
    double median_dbsm = 0.0;
};

// Median sigma (dBsm) over the azimuth window [phi_lo, phi_hi] for each
// (frequency, polarization) pair present in the result. Samples at the window
// endpoints are included.
std::vector<MedianReport> median_rcs(const RcsResult& result,
                                     double phi_lo_deg, double phi_hi_deg);

} // namespace rcs
