#include "rcsbench/sbr.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace rcs {

void validate(const SbrParams& params) {
    if (params.max_bounces < 1) throw std::invalid_argument("SbrParams: max_bounces must be >= 1");
    if (!(params.ray_density >= 1.0))
        throw std::invalid_argument("SbrParams: ray_density must be >= 1");
}

Vec3 look_direction(double theta_deg, double phi_deg) {
    double th = deg2rad(theta_deg);
    double ph = deg2rad(phi_deg);
    // unit vector toward the radar, negated to march toward the scene
    Vec3 u{std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), std::sin(th)};
    return -u;
}

PolBasis pol_basis(const Vec3& look_dir) {
    Vec3 z{0.0, 0.0, 1.0};
    Vec3 h = cross(z, look_dir);
    double n = norm(h);
    if (n < 1e-12) {
        // looking straight down the vertical axis; fall back to global x
        h = cross(Vec3{1.0, 0.0, 0.0}, look_dir);
        n = norm(h);
    }
    h = h / n;
    return {h, cross(look_dir, h)};
}

namespace {

constexpr int refine_n = 16; // subgrid for cells straddling the silhouette edge

bool probe_hits(const Scene& scene, const Vec3& origin, const Vec3& dir) {
    return intersect(scene, Ray{origin, dir}).has_value();
}

struct GammaPair {
    Complex te, tm;
};

GammaPair coating_gamma(const Coating& coating, double f_hz, double theta_deg) {
    GammaPair g;
    if (coating.is_pec()) {
        g.te = g.tm = Complex(-1.0, 0.0);
    } else {
        g.te = reflection_coefficient(*coating.stack, f_hz, theta_deg, Polarization::TE);
        g.tm = reflection_coefficient(*coating.stack, f_hz, theta_deg, Polarization::TM);
    }
    if (coating.rivets.area_fraction > 0.0) {
        g.te = effective_reflection(g.te, coating.rivets);
        g.tm = effective_reflection(g.tm, coating.rivets);
    }
    return g;
}

double tube_amp2(const RayTube& t) {
    return std::norm(t.amp_te) + std::norm(t.amp_tm);
}

// Complex-valued 3-vector for the current radiation integrand.
struct CVec3 {
    Complex x{0.0, 0.0}, y{0.0, 0.0}, z{0.0, 0.0};
};

CVec3 operator+(const CVec3& a, const CVec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
CVec3 operator-(const CVec3& a, const CVec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
CVec3 operator*(Complex s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
CVec3 cross(const Vec3& a, const CVec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
CVec3 cross(const CVec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
Complex dot(const CVec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// Footprint inflation cap for near-tangent final bounces (1/cos(theta_inc)).
constexpr double max_footprint_gain = 100.0;

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 : std::sin(x) / x; }

} // namespace

std::vector<RayTube> launch_rays(const Scene& scene, const Vec3& look_dir, double f_hz,
                                 const SbrParams& params, Polarization pol) {
    validate(params);
    if (std::abs(norm(look_dir) - 1.0) > 1e-12)
        throw std::invalid_argument("launch_rays: look direction must be unit length");
    if (!is_scene_pol(pol))
        throw std::invalid_argument("launch_rays: polarization must be HH or VV");

    std::vector<RayTube> tubes;
    if (scene.surfaces.empty()) return tubes;

    BoundingSphere bs = scene_bounds(scene);
    double lam = wavelength(f_hz);
    double s = lam / params.ray_density;
    PolBasis pb = pol_basis(look_dir);
    Vec3 p = pol == Polarization::HH ? pb.h : pb.v;

    // grid centered on the bounding-sphere center, launch plane behind the scene;
    // the irrational sub-cell offset keeps grid columns off geometric symmetry
    // planes, where center rays would strike seams and edges exactly
    const double nudge = 0.5 / std::sqrt(3.0);
    Vec3 c_perp = bs.center - dot(bs.center, look_dir) * look_dir +
                  (nudge * s) * pb.h + (nudge * s) * pb.v;
    double plane_s = dot(bs.center, look_dir) - bs.radius - 1.0;
    int n = static_cast<int>(std::ceil((bs.radius + s) / s));

    auto origin_at = [&](double du, double dv) {
        return c_perp + du * pb.h + dv * pb.v + plane_s * look_dir;
    };

    for (int iu = -n; iu <= n; ++iu) {
        for (int iv = -n; iv <= n; ++iv) {
            double u0 = iu * s, v0 = iv * s;
            bool center = probe_hits(scene, origin_at(u0, v0), look_dir);
            int corners = 0;
            for (double du : {-0.4995, 0.4995})
                for (double dv : {-0.4995, 0.4995})
                    corners += probe_hits(scene, origin_at(u0 + du * s, v0 + dv * s), look_dir)
                                   ? 1
                                   : 0;
            double weight = 0.0;
            Vec3 rep = origin_at(u0, v0);
            if (center && corners == 4) {
                weight = 1.0;
            } else if (!center && corners == 0) {
                continue;
            } else {
                // silhouette boundary: fractional footprint from a subgrid
                int hits = 0;
                double best_r2 = std::numeric_limits<double>::infinity();
                Vec3 best = rep;
                for (int a = 0; a < refine_n; ++a) {
                    for (int b = 0; b < refine_n; ++b) {
                        double du = ((a + 0.5) / refine_n - 0.5);
                        double dv = ((b + 0.5) / refine_n - 0.5);
                        Vec3 o = origin_at(u0 + du * s, v0 + dv * s);
                        if (probe_hits(scene, o, look_dir)) {
                            ++hits;
                            double r2 = du * du + dv * dv;
                            if (r2 < best_r2) {
                                best_r2 = r2;
                                best = o;
                            }
                        }
                    }
                }
                if (hits == 0) continue;
                weight = static_cast<double>(hits) / (refine_n * refine_n);
                rep = center ? origin_at(u0, v0) : best;
            }

            RayTube t;
            t.ray = Ray{rep, look_dir};
            t.amp_te = 1.0;
            t.amp_tm = 0.0;
            t.e_te = p;
            t.e_tm = cross(look_dir, p);
            t.cross_a = pb.h;
            t.cross_b = pb.v;
            t.cell_m = s;
            t.phase_path_m = dot(rep, look_dir); // distance from the reference
                                                 // plane through the origin
            t.bounces = 0;
            t.tube_area_m2 = weight * s * s;
            tubes.push_back(t);
        }
    }
    return tubes;
}

RayTube bounce(const RayTube& tube, const Hit& hit, const Coating& coating, double f_hz) {
    RayTube out = tube;
    const Vec3& d = tube.ray.dir;
    const Vec3& n = hit.normal; // oriented so dot(d, n) <= 0
    double cos_i = -dot(d, n);
    double theta_deg = rad2deg(std::acos(std::clamp(cos_i, -1.0, 1.0)));
    GammaPair g = coating_gamma(coating, f_hz, std::min(theta_deg, 90.0 - 1e-9));

    Vec3 cr = cross(d, n);
    double cr_n = norm(cr);
    if (cr_n < 1e-9) {
        // normal incidence: plane of incidence undefined, polarizations
        // degenerate; parallel-transport the previous basis
        out.inc_te = tube.amp_te;
        out.inc_tm = tube.amp_tm;
        out.inc_e_te = tube.e_te;
        out.inc_e_tm = tube.e_tm;
        out.ray.dir = reflect(d, n);
        out.amp_te = tube.amp_te * g.te;
        out.amp_tm = tube.amp_tm * g.te;
    } else {
        Vec3 e_perp = cr / cr_n;
        Vec3 e_par_i = cross(e_perp, d);
        Complex a_te = tube.amp_te * dot(tube.e_te, e_perp) + tube.amp_tm * dot(tube.e_tm, e_perp);
        Complex a_tm =
            tube.amp_te * dot(tube.e_te, e_par_i) + tube.amp_tm * dot(tube.e_tm, e_par_i);
        out.inc_te = a_te;
        out.inc_tm = a_tm;
        out.inc_e_te = e_perp;
        out.inc_e_tm = e_par_i;
        Vec3 dr = reflect(d, n);
        out.ray.dir = dr;
        out.amp_te = a_te * g.te;
        out.amp_tm = a_tm * g.tm;
        out.e_te = e_perp;
        out.e_tm = cross(dr, e_perp); // mirror image of the incident parallel axis
    }
    out.inc_dir = d;
    out.last_normal = n;
    out.cross_a = reflect(tube.cross_a, n);
    out.cross_b = reflect(tube.cross_b, n);
    out.ray.origin = hit.point;
    out.phase_path_m = tube.phase_path_m + hit.t;
    out.bounces = tube.bounces + 1;
    out.last_point = hit.point;
    return out;
}

FarField far_field(const std::vector<RayTube>& exited, const Vec3& look_dir, double f_hz,
                   Polarization pol) {
    if (!is_scene_pol(pol))
        throw std::invalid_argument("far_field: polarization must be HH or VV");
    double k = 2.0 * pi / wavelength(f_hz);
    PolBasis pb = pol_basis(look_dir);
    Vec3 p = pol == Polarization::HH ? pb.h : pb.v;
    Vec3 q = pol == Polarization::HH ? pb.v : pb.h;

    Vec3 u = -1.0 * look_dir; // toward the radar

    FarField ff;
    for (const RayTube& t : exited) {
        if (t.bounces == 0) continue;
        // two-way phase: reference plane to last interaction, plus the return
        // projection back onto the look axis
        double phase = t.phase_path_m + dot(t.last_point, look_dir);
        Complex ph = std::exp(Complex(0.0, -k * phase));

        // PO equivalent currents of the last bounce, radiated toward u.
        // Fields: Ei incident on that surface, Er leaving it; H scaled by eta0.
        CVec3 ei = t.inc_te * t.inc_e_te + t.inc_tm * t.inc_e_tm;
        CVec3 er = t.amp_te * t.e_te + t.amp_tm * t.e_tm;
        CVec3 hi = cross(t.inc_dir, ei);
        CVec3 hr = cross(t.ray.dir, er);
        const Vec3& n = t.last_normal;
        CVec3 j = cross(n, hi + hr);
        CVec3 m = cross(ei + er, n);
        CVec3 e_rad = (dot(j, u) * u - j) + cross(u, m); // eta0 u x (u x J) + u x M

        double cos_inc = std::max(-dot(t.inc_dir, n), 1.0 / max_footprint_gain);
        double footprint = t.tube_area_m2 / cos_inc;

        // linear phase taper across the footprint patch: the cross-section
        // imprinted on the surface along inc_dir, gradient k*(inc_dir + look)
        double dn = std::min(dot(t.inc_dir, n), -1.0 / max_footprint_gain);
        auto imprint = [&](const Vec3& e) { return e - (dot(e, n) / dn) * t.inc_dir; };
        Vec3 gsum = t.inc_dir + look_dir;
        double half = 0.5 * k * t.cell_m;
        double taper = sinc(half * dot(gsum, imprint(t.cross_a))) *
                       sinc(half * dot(gsum, imprint(t.cross_b)));

        Complex w = 0.5 * footprint * taper * ph;
        ff.co += dot(e_rad, p) * w;
        ff.cross += dot(e_rad, q) * w;
    }
    return ff;
}

namespace {

RcsSample sweep_cell(const Scene& scene, double f_hz, double theta_deg, double phi_deg,
                     Polarization pol, const SbrParams& params) {
    Vec3 d = look_direction(theta_deg, phi_deg);
    std::vector<RayTube> tubes = launch_rays(scene, d, f_hz, params, pol);

    double cull_amp2 = std::pow(10.0, params.tube_cull_db / 10.0);
    std::vector<RayTube> exited;
    exited.reserve(tubes.size());
    double launched_energy = 0.0;
    double residual = 0.0;

    for (RayTube t : tubes) {
        launched_energy += t.tube_area_m2;
        while (true) {
            auto hit = intersect(scene, t.ray);
            if (!hit) {
                if (t.bounces > 0) exited.push_back(t);
                break;
            }
            if (t.bounces >= params.max_bounces) {
                // still alive at the bounce cap: dropped, tracked as residual
                residual += t.tube_area_m2 * tube_amp2(t);
                break;
            }
            const Surface& surf = scene.surface_by_id(hit->surface_id);
            t = bounce(t, *hit, surf.coating, f_hz);
            if (tube_amp2(t) < cull_amp2) break; // absorbed
        }
    }

    FarField ff = far_field(exited, d, f_hz, pol);
    RcsSample s;
    s.f_hz = f_hz;
    s.theta_deg = theta_deg;
    s.phi_deg = phi_deg;
    s.pol = pol;
    s.field = ff.co;
    s.sigma_dbsm = clamped_dbsm(sigma_from_field(ff.co, f_hz));
    s.residual_energy = launched_energy > 0.0 ? residual / launched_energy : 0.0;
    return s;
}

} // namespace

RcsResult monostatic_sweep(const Scene& scene, const AngleGrid& angles,
                           const FrequencyGrid& freqs, Polarization pol,
                           const SbrParams& params, unsigned workers) {
    validate(params);
    if (!is_scene_pol(pol))
        throw std::invalid_argument("monostatic_sweep: polarization must be HH or VV");
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());

    std::size_t nf = freqs.points_hz.size();
    std::size_t np = angles.phi_points_deg.size();
    RcsResult out;
    out.samples.resize(nf * np);

    auto work = [&](unsigned w) {
        for (std::size_t cell = w; cell < nf * np; cell += workers) {
            std::size_t fi = cell / np;
            std::size_t pi = cell % np;
            out.samples[cell] = sweep_cell(scene, freqs.points_hz[fi], angles.theta_deg,
                                           angles.phi_points_deg[pi], pol, params);
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    return out;
}

} // namespace rcs
