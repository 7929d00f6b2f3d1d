#include "rcsbench/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace rcs {

void validate(const FitSpec& spec) {
    if (!(spec.f_lo_hz > 0.0) || !(spec.f_hi_hz >= spec.f_lo_hz))
        throw std::invalid_argument("FitSpec: need 0 < f_lo <= f_hi");
    if (!(spec.target_db < 0.0)) throw std::invalid_argument("FitSpec: target_db must be < 0");
    if (!(spec.grid_step_hz > 0.0)) throw std::invalid_argument("FitSpec: grid step must be > 0");
    if (!(spec.r_bounds_ohm[0] >= 0.0 && spec.r_bounds_ohm[0] <= spec.r_bounds_ohm[1]))
        throw std::invalid_argument("FitSpec: bad resistance bounds");
    if (!(spec.l_bounds_h[0] > 0.0 && spec.l_bounds_h[0] <= spec.l_bounds_h[1]))
        throw std::invalid_argument("FitSpec: bad inductance bounds");
    if (!(spec.c_bounds_f[0] > 0.0 && spec.c_bounds_f[0] <= spec.c_bounds_f[1]))
        throw std::invalid_argument("FitSpec: bad capacitance bounds");
    if (spec.population < 4) throw std::invalid_argument("FitSpec: population too small");
    if (spec.generations < 1) throw std::invalid_argument("FitSpec: generations must be >= 1");
}

namespace {

std::size_t find_free_sheet(const LayerStack& stack) {
    std::size_t idx = stack.elements.size();
    std::size_t found = 0;
    for (std::size_t i = 0; i < stack.elements.size(); ++i) {
        if (const auto* sh = std::get_if<SheetElement>(&stack.elements[i])) {
            if (sh->free) {
                idx = i;
                ++found;
            }
        }
    }
    if (found != 1)
        throw std::invalid_argument("fit_absorber: template needs exactly one free sheet");
    return idx;
}

std::vector<double> band_grid(const FitSpec& spec) {
    if (spec.f_lo_hz == spec.f_hi_hz) return {spec.f_lo_hz};
    std::vector<double> g;
    for (double f = spec.f_lo_hz; f < spec.f_hi_hz; f += spec.grid_step_hz) g.push_back(f);
    g.push_back(spec.f_hi_hz);
    return g;
}

double worst_db(LayerStack& stack, std::size_t sheet_idx, const SheetImpedance& p,
                const std::vector<double>& freqs) {
    std::get<SheetElement>(stack.elements[sheet_idx]).impedance = p;
    double worst = -400.0;
    for (double f : freqs) {
        double mag = std::abs(reflection_coefficient(stack, f, 0.0, Polarization::TE));
        double db = mag > 1e-20 ? 20.0 * std::log10(mag) : -400.0;
        worst = std::max(worst, db);
    }
    return worst;
}

struct Bounds {
    std::array<double, 2> lo_hi[3];
    double clip(int k, double v) const { return std::clamp(v, lo_hi[k][0], lo_hi[k][1]); }
};

using P3 = std::array<double, 3>;

} // namespace

double band_worst_db(const LayerStack& stack, const FitSpec& spec) {
    validate(spec);
    LayerStack s = stack;
    double worst = -400.0;
    for (double f : band_grid(spec)) {
        double mag = std::abs(reflection_coefficient(s, f, 0.0, Polarization::TE));
        worst = std::max(worst, mag > 1e-20 ? 20.0 * std::log10(mag) : -400.0);
    }
    return worst;
}

FitResult fit_absorber(const FitSpec& spec, const LayerStack& template_stack) {
    validate(spec);
    validate(template_stack);
    std::size_t sheet_idx = find_free_sheet(template_stack);
    std::vector<double> freqs = band_grid(spec);

    LayerStack work = template_stack;
    Bounds b{{spec.r_bounds_ohm, spec.l_bounds_h, spec.c_bounds_f}};
    auto eval = [&](const P3& p) {
        return worst_db(work, sheet_idx, {p[0], p[1], p[2]}, freqs);
    };

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    // Differential evolution, rand/1/bin with per-generation F dither. The
    // generation budget is split across two independent populations: a single
    // population can collapse into a local basin early (the minimax landscape
    // has a deceptive valley along the inductance lower bound), and a restart
    // from fresh random points is the cheapest reliable escape.
    int np = spec.population;
    const double CR = 0.9;
    P3 best{};
    double best_cost = std::numeric_limits<double>::infinity();
    const int phase_gens[2] = {(spec.generations + 1) / 2, spec.generations / 2};
    for (int phase = 0; phase < 2; ++phase) {
        std::vector<P3> pop(np);
        std::vector<double> cost(np);
        for (int i = 0; i < np; ++i) {
            for (int k = 0; k < 3; ++k)
                pop[i][k] = b.lo_hi[k][0] + u01(rng) * (b.lo_hi[k][1] - b.lo_hi[k][0]);
            cost[i] = eval(pop[i]);
        }
        for (int gen = 0; gen < phase_gens[phase]; ++gen) {
            const double F = 0.5 + 0.4 * u01(rng);
            for (int i = 0; i < np; ++i) {
                int r1, r2, r3;
                do { r1 = static_cast<int>(u01(rng) * np) % np; } while (r1 == i);
                do { r2 = static_cast<int>(u01(rng) * np) % np; } while (r2 == i || r2 == r1);
                do { r3 = static_cast<int>(u01(rng) * np) % np; } while (r3 == i || r3 == r1 || r3 == r2);
                int kforce = static_cast<int>(u01(rng) * 3.0) % 3;
                P3 trial = pop[i];
                for (int k = 0; k < 3; ++k) {
                    if (u01(rng) < CR || k == kforce)
                        trial[k] = b.clip(k, pop[r1][k] + F * (pop[r2][k] - pop[r3][k]));
                }
                double c = eval(trial);
                if (c <= cost[i]) {
                    pop[i] = trial;
                    cost[i] = c;
                }
            }
        }
        int best_i = static_cast<int>(std::min_element(cost.begin(), cost.end()) - cost.begin());
        if (cost[best_i] < best_cost) {
            best = pop[best_i];
            best_cost = cost[best_i];
        }
    }

    // Nelder-Mead polish on the DE winner, parameters normalized to the bounds box.
    std::array<double, 2>* bb = b.lo_hi;
    auto span = [&](int k) { return std::max(bb[k][1] - bb[k][0], 1e-300); };
    auto denorm = [&](const P3& q) {
        P3 p;
        for (int k = 0; k < 3; ++k) p[k] = b.clip(k, bb[k][0] + q[k] * span(k));
        return p;
    };
    auto evaln = [&](const P3& q) { return eval(denorm(q)); };

    P3 q0;
    for (int k = 0; k < 3; ++k) q0[k] = (best[k] - bb[k][0]) / span(k);
    std::array<P3, 4> sx;
    std::array<double, 4> sf;
    sx[0] = q0;
    sf[0] = best_cost;
    for (int k = 0; k < 3; ++k) {
        P3 q = q0;
        q[k] = std::clamp(q[k] + (q[k] < 0.95 ? 0.05 : -0.05), 0.0, 1.0);
        sx[k + 1] = q;
        sf[k + 1] = evaln(q);
    }
    auto order = [&] {
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (sf[j] < sf[i]) { std::swap(sf[i], sf[j]); std::swap(sx[i], sx[j]); }
    };
    for (int it = 0; it < 400; ++it) {
        order();
        if (sf[3] - sf[0] < 1e-10) break;
        P3 cen{};
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) cen[k] += sx[i][k] / 3.0;
        auto wander = [&](double t) {
            P3 q;
            for (int k = 0; k < 3; ++k) q[k] = std::clamp(cen[k] + t * (cen[k] - sx[3][k]), 0.0, 1.0);
            return q;
        };
        P3 qr = wander(1.0);
        double fr = evaln(qr);
        if (fr < sf[0]) {
            P3 qe = wander(2.0);
            double fe = evaln(qe);
            if (fe < fr) { sx[3] = qe; sf[3] = fe; } else { sx[3] = qr; sf[3] = fr; }
        } else if (fr < sf[2]) {
            sx[3] = qr;
            sf[3] = fr;
        } else {
            P3 qc = wander(fr < sf[3] ? 0.5 : -0.5);
            double fc = evaln(qc);
            if (fc < std::min(fr, sf[3])) {
                sx[3] = qc;
                sf[3] = fc;
            } else {
                for (int i = 1; i < 4; ++i) {
                    for (int k = 0; k < 3; ++k)
                        sx[i][k] = std::clamp(sx[0][k] + 0.5 * (sx[i][k] - sx[0][k]), 0.0, 1.0);
                    sf[i] = evaln(sx[i]);
                }
            }
        }
    }
    order();
    if (sf[0] < best_cost) {
        best = denorm(sx[0]);
        best_cost = sf[0];
    }

    FitResult out;
    out.best = {best[0], best[1], best[2]};
    out.achieved_worst_db = best_cost;
    out.met_target = best_cost <= spec.target_db;
    return out;
}

} // namespace rcs
