#pragma once

namespace rcs {

// SI constants. eta0 is derived from mu0 and c0 so that the transmission-line
// relations Z = omega*mu0/kz and Z = kz/(omega*eps0) agree exactly in vacuum.
inline constexpr double c0 = 299792458.0;                  // m/s
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double mu0 = 4.0e-7 * pi;                 // H/m
inline constexpr double eps0 = 1.0 / (mu0 * c0 * c0);      // F/m
inline constexpr double eta0 = mu0 * c0;                   // ohm, ~376.7303

// Results at or below this level are reported as the floor marker.
inline constexpr double sigma_floor_dbsm = -120.0;

inline constexpr double deg2rad(double d) { return d * (pi / 180.0); }
inline constexpr double rad2deg(double r) { return r * (180.0 / pi); }

} // namespace rcs
