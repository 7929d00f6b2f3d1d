#pragma once

#include <string>
#include <vector>

#include "rcsbench/fit.hpp"
#include "rcsbench/grids.hpp"
#include "rcsbench/sbr.hpp"

namespace rcs {

enum class Task { absorber, fit, plate, duct, scene, median };

// Everything a batch run needs. The CLI fills this from flags or a config
// file; tests construct it directly. Fields are grouped by the tasks that
// consume them; validate() checks only what the selected task requires.
struct RunConfig {
    Task task = Task::absorber;

    std::string output_path; // main CSV artifact
    bool emit_plot = true;   // write a sibling .gp plot script

    // frequency grid (GHz in the CLI, Hz here)
    double f_lo_hz = 10e9;
    double f_hi_hz = 10e9;
    double f_step_hz = 1e9;

    // azimuth sweep and elevation
    double phi_lo_deg = 180.0;
    double phi_hi_deg = 240.0;
    double phi_step_deg = 0.5;
    double theta_deg = 0.0;

    std::vector<Polarization> pols; // empty = task default

    SbrParams sbr;
    unsigned workers = 0; // 0 = hardware concurrency; set from the environment only

    // absorber / fit
    std::string stack_path;
    FitSpec fit;
    std::string fitted_stack_path; // fit output (default: <output>.stack)

    // plate
    double plate_a_m = 0.5;
    double plate_b_m = 0.5;
    std::string plate_coating = "pec"; // "pec" or a stack file path

    // duct
    double duct_diameter_m = 0.75;
    std::vector<double> duct_lengths_m = {1.0};
    std::string wall_coating = "pec";        // "pec" or a stack file path
    std::string termination_coating = "pec"; // "pec" or a stack file path
    double rivet_fraction = 0.0;             // on the wall coating

    // scene
    std::string scene_path;

    // median (also applied to the duct task's summary table)
    std::string input_csv;
    double median_phi_lo_deg = 180.0;
    double median_phi_hi_deg = 240.0;

    void validate() const;
};

Task parse_task(const std::string& name);
const char* task_name(Task task);

// Executes the task and returns the artifact paths written, in creation
// order. Throws on any failure after removing partial outputs; reruns with an
// identical config reproduce the artifacts byte for byte.
std::vector<std::string> run(const RunConfig& config);

} // namespace rcs
