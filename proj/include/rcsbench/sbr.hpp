#pragma once

#include "rcsbench/bvh.hpp"
#include "rcsbench/geometry.hpp"
#include "rcsbench/result.hpp"

namespace rcs {

struct SbrParams {
    int max_bounces = 20;
    double ray_density = 5.0;    // rays per wavelength of linear aperture extent
    double tube_cull_db = -60.0; // amplitude floor below which a tube is dropped
};

void validate(const SbrParams& params);

// A traced ray tube. The complex field is kept as two components in a local
// basis: E = amp_te*e_te + amp_tm*e_tm with e_te, e_tm unit vectors
// perpendicular to the current direction. The incident-side field of the most
// recent bounce (inc_* fields) is retained alongside the reflected field: the
// receive step radiates the physical-optics surface currents of that bounce,
// which needs both fields.
struct RayTube {
    Ray ray;
    Complex amp_te{0.0, 0.0};
    Complex amp_tm{0.0, 0.0};
    Vec3 e_te, e_tm;
    Complex inc_te{0.0, 0.0}; // incident-side field at the last bounce
    Complex inc_tm{0.0, 0.0};
    Vec3 inc_e_te, inc_e_tm; // its basis, transverse to inc_dir
    Vec3 inc_dir;            // propagation direction into the last bounce
    Vec3 last_normal;        // surface normal there, oriented against inc_dir
    Vec3 cross_a, cross_b;   // tube cross-section axes, carried through bounces
    double cell_m = 0.0;     // launch grid spacing (cross-section edge length)
    double phase_path_m = 0.0; // reference-plane offset plus traversed segments
    int bounces = 0;
    double tube_area_m2 = 0.0; // transverse cross-section at launch
    Vec3 last_point;           // surface point of the most recent interaction
};

// Horizontal/vertical receive-transmit unit vectors for a look direction.
// h = normalize(z x d), v = d x h; v equals global z for elevation 0 sweeps.
struct PolBasis {
    Vec3 h, v;
};
PolBasis pol_basis(const Vec3& look_dir);

// Uniform parallel ray grid covering the scene silhouette on the plane normal
// to look_dir, spacing lambda/ray_density. Cells whose corner probes disagree
// are refined on a 16x16 subgrid and carry the fractional footprint as their
// tube area, which keeps the summed launch area accurate to ~0.1%. Initial
// amplitude is the unit incident field in the (h, v) basis selected by pol.
std::vector<RayTube> launch_rays(const Scene& scene, const Vec3& look_dir, double f_hz,
                                 const SbrParams& params, Polarization pol);

// One geometric-optics reflection: TE/TM decomposition at the hit, reflection
// coefficients from the surface coating (rivet blend applied when present),
// mirror-law direction update, phase accumulation. Normal incidence keeps the
// previous basis (plane of incidence undefined; TE and TM coincide there).
RayTube bounce(const RayTube& tube, const Hit& hit, const Coating& coating, double f_hz);

// Coherent ray-tube sum over tubes that exited the scene. Each tube radiates
// the physical-optics equivalent currents of its last bounce (J = n x (Hi+Hr),
// M = (Ei+Er) x n) back toward the radar over its surface footprint
// (tube_area / cos(theta_inc)), times exp(-j*k*two_way_phase) and the linear
// phase taper of the footprint patch (separable sin(x)/x over the imprinted
// cross-section, gradient k*(inc_dir + look_dir) in the surface plane). The
// taper is exactly 1 on retro paths and suppresses grazing patches whose
// continuum contributions self-cancel. Reduces to amplitude x projected tube
// area on flat panels and to the textbook corner return on retroreflectors.
// Returns co- and cross-polarized channels for the transmit basis vector.
struct FarField {
    Complex co{0.0, 0.0};
    Complex cross{0.0, 0.0};
    double residual_energy = 0.0;
};
FarField far_field(const std::vector<RayTube>& exited, const Vec3& look_dir, double f_hz,
                   Polarization pol);

// Full monostatic sweep over (f, phi) cells at the grid's elevation. Cells are
// statically partitioned over `workers` threads (0 = hardware concurrency);
// accumulation inside a cell is sequential in launch order, so results are
// identical for any worker count.
RcsResult monostatic_sweep(const Scene& scene, const AngleGrid& angles,
                           const FrequencyGrid& freqs, Polarization pol,
                           const SbrParams& params, unsigned workers = 0);

// Radar look direction for sweep angles (theta elevation, phi azimuth, degrees):
// the unit vector pointing from the radar toward the scene.
Vec3 look_direction(double theta_deg, double phi_deg);

} // namespace rcs
