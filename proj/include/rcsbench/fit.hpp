#pragma once

#include <array>
#include <cstdint>

#include "rcsbench/absorber.hpp"

namespace rcs {

// Band-coverage fit of one free sheet inside a stack template. The objective
// is minimax: J(R,L,C) = max over the band grid of 20*log10|Gamma| at normal
// incidence. Search is derivative-free (differential evolution followed by a
// Nelder-Mead polish) and fully deterministic under the seed.
struct FitSpec {
    double f_lo_hz = 4e9;
    double f_hi_hz = 18e9; // f_lo <= f_hi; equal bounds give a single-point band
    double target_db = -10.0;
    double grid_step_hz = 0.1e9;
    std::array<double, 2> r_bounds_ohm = {10.0, 1000.0};
    std::array<double, 2> l_bounds_h = {0.1e-9, 100e-9};
    std::array<double, 2> c_bounds_f = {1e-15, 1000e-15};
    std::uint64_t seed = 1;
    int population = 40;
    int generations = 200;
};

void validate(const FitSpec& spec);

struct FitResult {
    SheetImpedance best;
    double achieved_worst_db = 0.0;
    bool met_target = false; // a miss is a result, not an exception
};

// template_stack must contain exactly one SheetElement with free == true.
FitResult fit_absorber(const FitSpec& spec, const LayerStack& template_stack);

// The fit objective, exposed for tests and for re-checking a returned result.
double band_worst_db(const LayerStack& stack, const FitSpec& spec);

} // namespace rcs
