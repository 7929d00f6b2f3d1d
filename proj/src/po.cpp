#include "rcsbench/po.hpp"

#include <cmath>
#include <stdexcept>

namespace rcs {

namespace {

Polarization to_stack_pol(Polarization pol) {
    // Azimuth scan across the panel: the horizontal field lies in the plane of
    // incidence (TM), the vertical field is perpendicular to it (TE).
    switch (pol) {
        case Polarization::HH: return Polarization::TM;
        case Polarization::VV: return Polarization::TE;
        default: return pol;
    }
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

} // namespace

Complex plate_gamma(const Coating& coating, double f_hz, double theta_deg, Polarization pol) {
    Complex g;
    if (coating.is_pec()) {
        g = {-1.0, 0.0};
    } else {
        g = reflection_coefficient(*coating.stack, f_hz, theta_deg, to_stack_pol(pol));
    }
    if (coating.rivets.area_fraction > 0.0) g = effective_reflection(g, coating.rivets);
    return g;
}

RcsResult plate_rcs(const PlateSpec& plate, double f_hz, const AngleGrid& scan,
                    Polarization pol) {
    if (!(plate.a_m > 0.0 && plate.b_m > 0.0))
        throw std::invalid_argument("plate_rcs: edges must be > 0");
    double lam = wavelength(f_hz);
    double k = 2.0 * pi / lam;
    double area = plate.a_m * plate.b_m;

    RcsResult out;
    out.samples.reserve(scan.phi_points_deg.size());
    for (double phi : scan.phi_points_deg) {
        double theta = std::abs(phi); // symmetric pattern, local incidence angle
        Complex g = plate_gamma(plate.coating, f_hz, theta, pol);
        double ct = std::cos(deg2rad(theta));
        double pattern = ct * sinc(k * plate.a_m * std::sin(deg2rad(theta)));
        Complex field = g * area * pattern;
        RcsSample s;
        s.f_hz = f_hz;
        s.theta_deg = scan.theta_deg;
        s.phi_deg = phi;
        s.pol = pol;
        s.field = field;
        s.sigma_dbsm = clamped_dbsm(sigma_from_field(field, f_hz));
        out.samples.push_back(s);
    }
    return out;
}

double sphere_rcs_go(double radius_m) {
    if (radius_m < 0.0) throw std::invalid_argument("sphere_rcs_go: negative radius");
    return pi * radius_m * radius_m;
}

} // namespace rcs
