#include "rcsbench/median.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace rcs {

double median_lower(std::vector<double> values) {
    if (values.empty())
        throw std::domain_error("median of empty vector");
    const std::size_t k = (values.size() - 1) / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k),
                     values.end());
    return values[k];
}

std::vector<MedianReport> median_rcs(const RcsResult& result,
                                     double phi_lo_deg, double phi_hi_deg) {
    if (!(phi_lo_deg <= phi_hi_deg))
        throw std::invalid_argument("median window: phi_lo > phi_hi");

    std::map<std::pair<double, int>, std::vector<double>> buckets;
    for (const RcsSample& s : result.samples) {
        if (s.phi_deg < phi_lo_deg || s.phi_deg > phi_hi_deg) continue;
        buckets[{s.f_hz, static_cast<int>(s.pol)}].push_back(s.sigma_dbsm);
    }
    if (buckets.empty())
        throw std::domain_error("median window contains no samples");

    std::vector<MedianReport> out;
    out.reserve(buckets.size());
    for (auto& [key, vals] : buckets) {
        MedianReport r;
        r.f_hz = key.first;
        r.pol = static_cast<Polarization>(key.second);
        r.phi_lo_deg = phi_lo_deg;
        r.phi_hi_deg = phi_hi_deg;
        r.count = vals.size();
        r.median_dbsm = median_lower(std::move(vals));
        out.push_back(r);
    }
    return out;
}

} // namespace rcs
