#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rcsbench/runner.hpp"

namespace {

// Worker count comes from the environment only; there is no flag for it.
unsigned workers_from_env() {
    const char* v = std::getenv("RCSBENCH_WORKERS");
    if (!v || !*v) return 0;
    char* end = nullptr;
    unsigned long n = std::strtoul(v, &end, 10);
    if (end == v || *end != '\0')
        throw std::invalid_argument("RCSBENCH_WORKERS must be a nonnegative integer");
    return static_cast<unsigned>(n);
}

struct CliArgs {
    rcs::RunConfig cfg;
    double f_lo_ghz = 10.0;
    double f_hi_ghz = 10.0;
    double f_step_ghz = 1.0;
    double fit_lo_ghz = 4.0;
    double fit_hi_ghz = 18.0;
    double fit_step_ghz = 0.1;
    std::vector<std::string> pol_names;
};

void add_output_flags(CLI::App* cmd, CliArgs& a) {
    cmd->add_option("-o,--output", a.cfg.output_path, "output CSV path")->required();
    cmd->add_flag("--no-plot", [&a](std::int64_t) { a.cfg.emit_plot = false; },
                  "skip the gnuplot script");
}

void add_freq_flags(CLI::App* cmd, CliArgs& a) {
    cmd->add_option("--f-lo", a.f_lo_ghz, "sweep start, GHz");
    cmd->add_option("--f-hi", a.f_hi_ghz, "sweep stop, GHz");
    cmd->add_option("--f-step", a.f_step_ghz, "sweep step, GHz");
}

void add_pol_flag(CLI::App* cmd, CliArgs& a, const char* allowed_help) {
    cmd->add_option("--pol", a.pol_names, allowed_help)
        ->check(CLI::IsMember({"HH", "VV", "TE", "TM"}));
}

void add_angle_flags(CLI::App* cmd, CliArgs& a) {
    cmd->add_option("--theta", a.cfg.theta_deg, "elevation, deg");
    cmd->add_option("--phi-lo", a.cfg.phi_lo_deg, "azimuth start, deg");
    cmd->add_option("--phi-hi", a.cfg.phi_hi_deg, "azimuth stop, deg");
    cmd->add_option("--phi-step", a.cfg.phi_step_deg, "azimuth step, deg");
}

void add_sbr_flags(CLI::App* cmd, CliArgs& a) {
    cmd->add_option("--density", a.cfg.sbr.ray_density, "rays per wavelength of extent");
    cmd->add_option("--bounces", a.cfg.sbr.max_bounces, "bounce cap");
    cmd->add_option("--cull-db", a.cfg.sbr.tube_cull_db, "tube amplitude floor, dB");
}

void add_median_window_flags(CLI::App* cmd, CliArgs& a) {
    cmd->add_option("--median-phi-lo", a.cfg.median_phi_lo_deg, "median window start, deg");
    cmd->add_option("--median-phi-hi", a.cfg.median_phi_hi_deg, "median window stop, deg");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multilayer absorber and shooting-bouncing-rays RCS workbench"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read flags from an INI config file (sections per task)");

    CliArgs a;

    CLI::App* absorber = app.add_subcommand("absorber", "reflection sweep of a stack file");
    absorber->add_option("--stack", a.cfg.stack_path, "stack description file")->required();
    absorber->add_option("--theta", a.cfg.theta_deg, "incidence angle, deg");
    add_freq_flags(absorber, a);
    add_pol_flag(absorber, a, "TE and/or TM (default TE)");
    add_output_flags(absorber, a);

    CLI::App* fit = app.add_subcommand("fit", "tune the free sheet of a stack for band coverage");
    fit->add_option("--stack", a.cfg.stack_path, "stack template with one free sheet")->required();
    fit->add_option("--band-lo", a.fit_lo_ghz, "fit band start, GHz");
    fit->add_option("--band-hi", a.fit_hi_ghz, "fit band stop, GHz");
    fit->add_option("--band-step", a.fit_step_ghz, "fit band grid step, GHz");
    fit->add_option("--target-db", a.cfg.fit.target_db, "worst-case target, dB");
    fit->add_option("--seed", a.cfg.fit.seed, "search seed");
    fit->add_option("--population", a.cfg.fit.population, "search population");
    fit->add_option("--generations", a.cfg.fit.generations, "search generations");
    fit->add_option("--fitted-stack", a.cfg.fitted_stack_path,
                    "where to write the tuned stack (default: <output>.stack)");
    add_freq_flags(fit, a);
    add_pol_flag(fit, a, "TE and/or TM for the verification sweep (default TE)");
    add_output_flags(fit, a);

    CLI::App* plate = app.add_subcommand("plate", "physical-optics coated plate pattern");
    plate->add_option("--a", a.cfg.plate_a_m, "plate edge along the scan axis, m");
    plate->add_option("--b", a.cfg.plate_b_m, "plate edge across the scan axis, m");
    plate->add_option("--coating", a.cfg.plate_coating, "'pec' or a stack file");
    plate->add_option("--rivet-fraction", a.cfg.rivet_fraction, "exposed fastener area fraction");
    add_freq_flags(plate, a);
    add_angle_flags(plate, a);
    add_pol_flag(plate, a, "HH/VV/TE/TM (default HH VV)");
    add_output_flags(plate, a);

    CLI::App* duct = app.add_subcommand("duct", "ray-traced circular intake duct sweep");
    duct->add_option("--diameter", a.cfg.duct_diameter_m, "duct diameter, m");
    duct->add_option("--lengths", a.cfg.duct_lengths_m, "duct length(s), m")
        ->expected(-1);
    duct->add_option("--wall", a.cfg.wall_coating, "'pec' or a stack file");
    duct->add_option("--termination", a.cfg.termination_coating, "'pec' or a stack file");
    duct->add_option("--rivet-fraction", a.cfg.rivet_fraction,
                     "exposed fastener area fraction on the wall");
    add_freq_flags(duct, a);
    add_angle_flags(duct, a);
    add_sbr_flags(duct, a);
    add_median_window_flags(duct, a);
    add_pol_flag(duct, a, "HH and/or VV (default both)");
    add_output_flags(duct, a);

    CLI::App* scene = app.add_subcommand("scene", "ray-traced sweep of a scene file");
    scene->add_option("--scene", a.cfg.scene_path, "scene description file")->required();
    add_freq_flags(scene, a);
    add_angle_flags(scene, a);
    add_sbr_flags(scene, a);
    add_pol_flag(scene, a, "HH and/or VV (default both)");
    add_output_flags(scene, a);

    CLI::App* median = app.add_subcommand("median", "median sigma over an azimuth window");
    median->add_option("-i,--input", a.cfg.input_csv, "sweep CSV to summarize")->required();
    add_median_window_flags(median, a);
    add_output_flags(median, a);

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* picked = app.get_subcommands().front();
        a.cfg.task = rcs::parse_task(picked->get_name());
        a.cfg.f_lo_hz = a.f_lo_ghz * 1e9;
        a.cfg.f_hi_hz = a.f_hi_ghz * 1e9;
        a.cfg.f_step_hz = a.f_step_ghz * 1e9;
        a.cfg.fit.f_lo_hz = a.fit_lo_ghz * 1e9;
        a.cfg.fit.f_hi_hz = a.fit_hi_ghz * 1e9;
        a.cfg.fit.grid_step_hz = a.fit_step_ghz * 1e9;
        for (const std::string& name : a.pol_names)
            a.cfg.pols.push_back(rcs::parse_pol(name));
        a.cfg.workers = workers_from_env();

        std::vector<std::string> artifacts = rcs::run(a.cfg);
        for (const std::string& p : artifacts) std::cout << "wrote " << p << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
