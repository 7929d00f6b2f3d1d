#include "rcsbench/absorber.hpp"

#include <cmath>
#include <stdexcept>

namespace rcs {

void validate(const Material& m) {
    if (m.is_pec) return;
    if (!(m.eps_r >= 1.0)) throw std::invalid_argument("Material: eps_r must be >= 1");
    if (!(m.tan_delta >= 0.0)) throw std::invalid_argument("Material: tan_delta must be >= 0");
    if (!(m.mu_r >= 1.0)) throw std::invalid_argument("Material: mu_r must be >= 1");
}

void validate(const SheetImpedance& s) {
    if (!(s.r_ohm >= 0.0)) throw std::invalid_argument("SheetImpedance: r_ohm must be >= 0");
    if (!(s.l_h > 0.0)) throw std::invalid_argument("SheetImpedance: l_h must be > 0");
    if (!(s.c_f > 0.0)) throw std::invalid_argument("SheetImpedance: c_f must be > 0");
}

void validate(const LayerStack& s) {
    for (const auto& el : s.elements) {
        if (const auto* layer = std::get_if<LayerElement>(&el)) {
            if (layer->material.is_pec)
                throw std::invalid_argument("LayerStack: PEC is a backing, not a layer");
            validate(layer->material);
            if (!(layer->thickness_m > 0.0))
                throw std::invalid_argument("LayerStack: layer thickness must be > 0");
        } else {
            validate(std::get<SheetElement>(el).impedance);
        }
    }
    if (s.elements.empty() && s.backing != Backing::pec)
        throw std::invalid_argument("LayerStack: empty stack needs a PEC backing");
}

Complex sheet_impedance(const SheetImpedance& sheet, double f_hz) {
    if (!(f_hz > 0.0)) throw std::domain_error("sheet_impedance: frequency must be > 0");
    validate(sheet);
    double w = 2.0 * pi * f_hz;
    return {sheet.r_ohm, w * sheet.l_h - 1.0 / (w * sheet.c_f)};
}

WaveParams layer_wave_params(const Material& mat, double f_hz, double theta_deg,
                             Polarization pol) {
    if (!(f_hz > 0.0)) throw std::domain_error("layer_wave_params: frequency must be > 0");
    if (mat.is_pec) throw std::domain_error("layer_wave_params: PEC is a backing, not a layer");
    if (theta_deg < 0.0 || theta_deg >= 90.0)
        throw std::domain_error("layer_wave_params: theta must be in [0, 90)");
    if (!is_stack_pol(pol))
        throw std::invalid_argument("layer_wave_params: polarization must be TE or TM");
    validate(mat);

    double w = 2.0 * pi * f_hz;
    double k0 = w / c0;
    // e^{+jwt} convention: lossy permittivity has a negative imaginary part and
    // the decaying branch is Im(kz) <= 0.
    Complex eps_c = mat.eps_r * Complex(1.0, -mat.tan_delta);

    if (theta_deg == 0.0) {
        // One shared expression at normal incidence so TE and TM results are
        // bitwise identical (the polarizations are physically degenerate there).
        Complex kz = k0 * std::sqrt(mat.mu_r * eps_c);
        if (kz.imag() > 0.0) kz = -kz;
        return {kz, w * mu0 * mat.mu_r / kz};
    }

    double st = std::sin(deg2rad(theta_deg));
    Complex kz = k0 * std::sqrt(mat.mu_r * eps_c - st * st);
    if (kz.imag() > 0.0) kz = -kz;
    if (pol == Polarization::TE) return {kz, w * mu0 * mat.mu_r / kz};
    return {kz, kz / (w * eps0 * eps_c)};
}

Complex input_impedance(const LayerStack& stack, double f_hz, double theta_deg,
                        Polarization pol) {
    validate(stack);
    Complex zl;
    if (stack.backing == Backing::pec) {
        zl = 0.0;
    } else {
        zl = layer_wave_params(Material::vacuum(), f_hz, theta_deg, pol).z;
    }
    for (auto it = stack.elements.rbegin(); it != stack.elements.rend(); ++it) {
        if (const auto* layer = std::get_if<LayerElement>(&*it)) {
            auto [kz, zc] = layer_wave_params(layer->material, f_hz, theta_deg, pol);
            Complex t = std::tan(kz * layer->thickness_m);
            Complex j(0.0, 1.0);
            zl = zc * (zl + j * zc * t) / (zc + j * zl * t);
        } else {
            Complex zs = sheet_impedance(std::get<SheetElement>(*it).impedance, f_hz);
            Complex den = zs + zl;
            if (std::abs(den) == 0.0)
                throw std::domain_error("input_impedance: singular shunt combination");
            zl = zs * zl / den;
        }
    }
    return zl;
}

Complex reflection_coefficient(const LayerStack& stack, double f_hz, double theta_deg,
                               Polarization pol) {
    Complex zin = input_impedance(stack, f_hz, theta_deg, pol);
    Complex z0 = layer_wave_params(Material::vacuum(), f_hz, theta_deg, pol).z;
    return (zin - z0) / (zin + z0);
}

ReflectionSpectrum reflection(const LayerStack& stack, const FrequencyGrid& grid,
                              double theta_deg, Polarization pol) {
    ReflectionSpectrum out;
    out.freqs_hz = grid.points_hz;
    out.theta_deg = theta_deg;
    out.pol = pol;
    out.gamma.reserve(grid.points_hz.size());
    for (double f : grid.points_hz)
        out.gamma.push_back(reflection_coefficient(stack, f, theta_deg, pol));
    return out;
}

} // namespace rcs
