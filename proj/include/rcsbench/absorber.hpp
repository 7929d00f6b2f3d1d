#pragma once

#include <variant>
#include <vector>

#include "rcsbench/grids.hpp"
#include "rcsbench/vec3.hpp"

namespace rcs {

// Homogeneous material. PEC is representable but only legal as a backing.
struct Material {
    double eps_r = 1.0;     // relative permittivity, real part
    double tan_delta = 0.0; // loss tangent
    double mu_r = 1.0;      // relative permeability
    bool is_pec = false;

    static Material vacuum() { return {}; }
    static Material pec() { Material m; m.is_pec = true; return m; }
    static Material dielectric(double eps_r, double tan_delta, double mu_r = 1.0) {
        return {eps_r, tan_delta, mu_r, false};
    }
};

// Series-RLC sheet: Zs = R + j(wL - 1/(wC)).
struct SheetImpedance {
    double r_ohm = 0.0;
    double l_h = 0.0;
    double c_f = 0.0;
};

struct LayerElement {
    Material material;
    double thickness_m = 0.0;
};

struct SheetElement {
    SheetImpedance impedance;
    bool free = false; // marked as the fit target by fit_absorber templates
};

using StackElement = std::variant<LayerElement, SheetElement>;

enum class Backing { pec, free_space };

// Ordered from the incidence side toward the backing.
struct LayerStack {
    std::vector<StackElement> elements;
    Backing backing = Backing::pec;
};

// Throws std::invalid_argument when a type invariant is violated.
void validate(const Material& m);
void validate(const SheetImpedance& s);
void validate(const LayerStack& s);

struct WaveParams {
    Complex kz; // longitudinal wavenumber, 1/m, Im(kz) <= 0
    Complex z;  // wave impedance, ohm
};

// Zs = R + j(wL - 1/(wC)) at f.
Complex sheet_impedance(const SheetImpedance& sheet, double f_hz);

// Oblique-incidence wave parameters for one layer. theta_deg is the free-space
// incidence angle (the transverse wavenumber k0*sin(theta) is shared by every
// layer, which is how Snell continuity enters). pol must be TE or TM; at
// theta == 0 both polarizations are computed by one shared expression so they
// agree bit for bit.
WaveParams layer_wave_params(const Material& mat, double f_hz, double theta_deg,
                             Polarization pol);

// Input impedance looking into the stack from free space, by the standard
// transmission-line recursion from the backing toward the front.
Complex input_impedance(const LayerStack& stack, double f_hz, double theta_deg,
                        Polarization pol);

// Gamma = (Zin - Z0) / (Zin + Z0) with Z0 the free-space impedance at (theta, pol).
Complex reflection_coefficient(const LayerStack& stack, double f_hz, double theta_deg,
                               Polarization pol);

// A reflection sweep at fixed (theta, pol).
struct ReflectionSpectrum {
    std::vector<double> freqs_hz;
    double theta_deg = 0.0;
    Polarization pol = Polarization::TE;
    std::vector<Complex> gamma;
};

ReflectionSpectrum reflection(const LayerStack& stack, const FrequencyGrid& grid,
                              double theta_deg, Polarization pol);

} // namespace rcs
