#include "rcsbench/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "rcsbench/absorber.hpp"
#include "rcsbench/bvh.hpp"
#include "rcsbench/csv_io.hpp"
#include "rcsbench/median.hpp"
#include "rcsbench/po.hpp"
#include "rcsbench/scene_io.hpp"
#include "rcsbench/stack_io.hpp"

namespace rcs {

namespace {

namespace fs = std::filesystem;

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// Removes everything written so far unless commit() was reached.
class ArtifactGuard {
public:
    ~ArtifactGuard() {
        if (armed_) {
            std::error_code ec;
            for (const std::string& p : paths_) fs::remove(p, ec);
        }
    }
    void track(const std::string& path) { paths_.push_back(path); }
    std::vector<std::string> commit() {
        armed_ = false;
        return std::move(paths_);
    }

private:
    std::vector<std::string> paths_;
    bool armed_ = true;
};

FrequencyGrid freq_grid(const RunConfig& c) {
    return FrequencyGrid::from_range(c.f_lo_hz, c.f_hi_hz, c.f_step_hz);
}

AngleGrid angle_grid(const RunConfig& c) {
    return AngleGrid::from_range(c.theta_deg, c.phi_lo_deg, c.phi_hi_deg, c.phi_step_deg);
}

std::vector<Polarization> task_pols(const RunConfig& c) {
    if (!c.pols.empty()) return c.pols;
    if (c.task == Task::absorber || c.task == Task::fit) return {Polarization::TE};
    return {Polarization::HH, Polarization::VV};
}

Coating coating_from(const std::string& value, double rivet_fraction) {
    Coating c;
    if (value != "pec") c.stack = load_stack(value);
    c.rivets.area_fraction = rivet_fraction;
    return c;
}

std::string with_suffix(const std::string& path, const std::string& suffix,
                        const std::string& ext) {
    fs::path p(path);
    fs::path out = p.parent_path() / (p.stem().string() + suffix + ext);
    return out.string();
}

// Interleave per-polarization sweeps into frequency-major, pol, phi order.
RcsResult merge_pols(const std::vector<RcsResult>& per_pol, std::size_t n_freq,
                     std::size_t n_phi) {
    RcsResult out;
    out.samples.reserve(per_pol.size() * n_freq * n_phi);
    for (std::size_t fi = 0; fi < n_freq; ++fi)
        for (const RcsResult& r : per_pol)
            for (std::size_t pi = 0; pi < n_phi; ++pi)
                out.samples.push_back(r.samples[fi * n_phi + pi]);
    return out;
}

RcsResult gamma_rows(const LayerStack& stack, const FrequencyGrid& grid, double theta_deg,
                     const std::vector<Polarization>& pols) {
    std::vector<ReflectionSpectrum> spectra;
    for (Polarization pol : pols) spectra.push_back(reflection(stack, grid, theta_deg, pol));
    RcsResult out;
    for (std::size_t fi = 0; fi < grid.points_hz.size(); ++fi) {
        for (std::size_t pi = 0; pi < pols.size(); ++pi) {
            RcsSample s;
            s.f_hz = grid.points_hz[fi];
            s.theta_deg = theta_deg;
            s.phi_deg = 0.0;
            s.pol = pols[pi];
            s.field = spectra[pi].gamma[fi];
            s.sigma_dbsm = 20.0 * std::log10(std::max(std::abs(s.field), 1e-300));
            out.samples.push_back(s);
        }
    }
    return out;
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << body;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string plot_header(const std::string& xlabel, const std::string& ylabel) {
    std::ostringstream gp;
    gp << "set datafile separator ','\n"
       << "set grid\nset key outside\n"
       << "set xlabel '" << xlabel << "'\n"
       << "set ylabel '" << ylabel << "'\n";
    return gp.str();
}

std::string gamma_plot(const std::string& csv, const std::vector<Polarization>& pols) {
    std::ostringstream gp;
    gp << plot_header("frequency (GHz)", "20 log10 |Gamma| (dB)");
    gp << "plot \\\n";
    for (std::size_t i = 0; i < pols.size(); ++i) {
        gp << "  '" << fs::path(csv).filename().string() << "' skip 1 using ($1/1e9):(strcol(4) eq '"
           << pol_name(pols[i]) << "' ? $5 : 1/0) with lines title '" << pol_name(pols[i])
           << "'";
        gp << (i + 1 < pols.size() ? ", \\\n" : "\n");
    }
    return gp.str();
}

std::string pattern_plot(const std::vector<std::string>& csvs,
                         const std::vector<std::string>& labels,
                         const FrequencyGrid& freqs,
                         const std::vector<Polarization>& pols) {
    std::ostringstream gp;
    gp << plot_header("azimuth phi (deg)", "sigma (dBsm)");
    gp << "plot \\\n";
    bool first = true;
    for (std::size_t ci = 0; ci < csvs.size(); ++ci) {
        for (double f : freqs.points_hz) {
            for (Polarization pol : pols) {
                if (!first) gp << ", \\\n";
                first = false;
                gp << "  '" << fs::path(csvs[ci]).filename().string() << "' skip 1 using 3:(($1=="
                   << fmt("%.17g", f) << " && strcol(4) eq '" << pol_name(pol)
                   << "') ? $5 : 1/0) with lines title '" << labels[ci]
                   << fmt("%g", f / 1e9) << " GHz " << pol_name(pol) << "'";
            }
        }
    }
    gp << '\n';
    return gp.str();
}

std::string median_plot(const std::string& csv, const std::vector<Polarization>& pols) {
    std::ostringstream gp;
    gp << plot_header("duct length (m)", "median sigma (dBsm)");
    gp << "plot \\\n";
    for (std::size_t i = 0; i < pols.size(); ++i) {
        gp << "  '" << fs::path(csv).filename().string() << "' skip 1 using 1:(strcol(3) eq '"
           << pol_name(pols[i]) << "' ? $7 : 1/0) with linespoints title '"
           << pol_name(pols[i]) << "'";
        gp << (i + 1 < pols.size() ? ", \\\n" : "\n");
    }
    return gp.str();
}

void write_median_csv(const std::string& path, const std::vector<double>& lengths,
                      const std::vector<std::vector<MedianReport>>& reports) {
    std::ostringstream out;
    const bool with_length = !lengths.empty();
    out << (with_length ? "length_m," : "")
        << "freq_hz,pol,phi_lo_deg,phi_hi_deg,count,median_dbsm\n";
    char buf[256];
    for (std::size_t i = 0; i < reports.size(); ++i) {
        for (const MedianReport& r : reports[i]) {
            if (with_length) out << fmt("%.17g", lengths[i]) << ',';
            std::snprintf(buf, sizeof buf, "%.17g,%s,%.17g,%.17g,%zu,%.17g\n", r.f_hz,
                          pol_name(r.pol).c_str(), r.phi_lo_deg, r.phi_hi_deg, r.count,
                          r.median_dbsm);
            out << buf;
        }
    }
    write_text(path, out.str());
}

std::vector<std::string> run_absorber(const RunConfig& c) {
    ArtifactGuard guard;
    LayerStack stack = load_stack(c.stack_path);
    FrequencyGrid grid = freq_grid(c);
    auto pols = task_pols(c);
    RcsResult rows = gamma_rows(stack, grid, c.theta_deg, pols);
    write_csv(c.output_path, rows);
    guard.track(c.output_path);
    if (c.emit_plot) {
        std::string gp = with_suffix(c.output_path, "", ".gp");
        write_text(gp, gamma_plot(c.output_path, pols));
        guard.track(gp);
    }
    return guard.commit();
}

std::vector<std::string> run_fit(const RunConfig& c) {
    ArtifactGuard guard;
    LayerStack stack = load_stack(c.stack_path);
    FitResult fit = fit_absorber(c.fit, stack);

    LayerStack fitted = stack;
    for (StackElement& e : fitted.elements)
        if (auto* sheet = std::get_if<SheetElement>(&e); sheet && sheet->free)
            sheet->impedance = fit.best;

    std::string stack_out = c.fitted_stack_path.empty()
                                ? with_suffix(c.output_path, "", ".stack")
                                : c.fitted_stack_path;
    save_stack(stack_out, fitted);
    guard.track(stack_out);

    FrequencyGrid grid = freq_grid(c);
    auto pols = task_pols(c);
    RcsResult rows = gamma_rows(fitted, grid, c.theta_deg, pols);
    write_csv(c.output_path, rows);
    guard.track(c.output_path);
    if (c.emit_plot) {
        std::string gp = with_suffix(c.output_path, "", ".gp");
        write_text(gp, gamma_plot(c.output_path, pols));
        guard.track(gp);
    }

    std::cout << "fit: worst in-band " << fmt("%.4f", fit.achieved_worst_db) << " dB ("
              << (fit.met_target ? "meets" : "misses") << " target "
              << fmt("%.4f", c.fit.target_db) << " dB), sheet written to " << stack_out
              << '\n';
    return guard.commit();
}

std::vector<std::string> run_plate(const RunConfig& c) {
    ArtifactGuard guard;
    PlateSpec plate;
    plate.a_m = c.plate_a_m;
    plate.b_m = c.plate_b_m;
    plate.coating = coating_from(c.plate_coating, c.rivet_fraction);

    FrequencyGrid grid = freq_grid(c);
    AngleGrid scan = angle_grid(c);
    auto pols = task_pols(c);

    std::vector<RcsResult> per_pol;
    for (Polarization pol : pols) {
        RcsResult r;
        for (double f : grid.points_hz) {
            RcsResult one = plate_rcs(plate, f, scan, pol);
            r.samples.insert(r.samples.end(), one.samples.begin(), one.samples.end());
        }
        per_pol.push_back(std::move(r));
    }
    RcsResult merged = merge_pols(per_pol, grid.points_hz.size(), scan.phi_points_deg.size());
    write_csv(c.output_path, merged);
    guard.track(c.output_path);
    if (c.emit_plot) {
        std::string gp = with_suffix(c.output_path, "", ".gp");
        write_text(gp, pattern_plot({c.output_path}, {""}, grid, pols));
        guard.track(gp);
    }
    return guard.commit();
}

RcsResult sweep_scene(const Scene& scene, const RunConfig& c, const FrequencyGrid& grid,
                      const AngleGrid& scan, const std::vector<Polarization>& pols) {
    std::vector<RcsResult> per_pol;
    for (Polarization pol : pols)
        per_pol.push_back(monostatic_sweep(scene, scan, grid, pol, c.sbr, c.workers));
    return merge_pols(per_pol, grid.points_hz.size(), scan.phi_points_deg.size());
}

std::vector<std::string> run_duct(const RunConfig& c) {
    ArtifactGuard guard;
    FrequencyGrid grid = freq_grid(c);
    AngleGrid scan = angle_grid(c);
    auto pols = task_pols(c);

    Coating wall = coating_from(c.wall_coating, c.rivet_fraction);
    Coating termination = coating_from(c.termination_coating, 0.0);

    const bool multi = c.duct_lengths_m.size() > 1;
    std::vector<std::string> sweep_csvs;
    std::vector<std::string> labels;
    std::vector<std::vector<MedianReport>> medians;
    for (double length : c.duct_lengths_m) {
        Scene scene = make_duct(c.duct_diameter_m, length, wall, termination);
        build_bvh(scene);
        RcsResult result = sweep_scene(scene, c, grid, scan, pols);
        std::string csv = multi
                              ? with_suffix(c.output_path, "_L" + fmt("%g", length), ".csv")
                              : c.output_path;
        write_csv(csv, result);
        guard.track(csv);
        sweep_csvs.push_back(csv);
        labels.push_back("L=" + fmt("%g", length) + " m ");
        medians.push_back(median_rcs(result, c.median_phi_lo_deg, c.median_phi_hi_deg));
    }

    std::string median_csv = with_suffix(c.output_path, "_median", ".csv");
    write_median_csv(median_csv, c.duct_lengths_m, medians);
    guard.track(median_csv);

    if (c.emit_plot) {
        std::string gp = with_suffix(c.output_path, "", ".gp");
        write_text(gp, pattern_plot(sweep_csvs, labels, grid, pols));
        guard.track(gp);
        if (multi) {
            std::string mgp = with_suffix(c.output_path, "_median", ".gp");
            write_text(mgp, median_plot(median_csv, pols));
            guard.track(mgp);
        }
    }
    return guard.commit();
}

std::vector<std::string> run_scene_task(const RunConfig& c) {
    ArtifactGuard guard;
    Scene scene = load_scene(c.scene_path);
    FrequencyGrid grid = freq_grid(c);
    AngleGrid scan = angle_grid(c);
    auto pols = task_pols(c);
    RcsResult result = sweep_scene(scene, c, grid, scan, pols);
    write_csv(c.output_path, result);
    guard.track(c.output_path);
    if (c.emit_plot) {
        std::string gp = with_suffix(c.output_path, "", ".gp");
        write_text(gp, pattern_plot({c.output_path}, {""}, grid, pols));
        guard.track(gp);
    }
    return guard.commit();
}

std::vector<std::string> run_median(const RunConfig& c) {
    ArtifactGuard guard;
    RcsResult result = read_csv(c.input_csv);
    auto reports = median_rcs(result, c.median_phi_lo_deg, c.median_phi_hi_deg);
    write_median_csv(c.output_path, {}, {reports});
    guard.track(c.output_path);
    for (const MedianReport& r : reports)
        std::cout << "median sigma " << fmt("%.4f", r.median_dbsm) << " dBsm at "
                  << fmt("%g", r.f_hz / 1e9) << " GHz " << pol_name(r.pol) << " over phi ["
                  << fmt("%g", r.phi_lo_deg) << ", " << fmt("%g", r.phi_hi_deg) << "] ("
                  << r.count << " samples)\n";
    return guard.commit();
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("config: " + what);
}

void require_file(const std::string& path, const std::string& what) {
    require(!path.empty(), what + " not set");
    require(fs::exists(path), what + " does not exist: " + path);
}

} // namespace

Task parse_task(const std::string& name) {
    if (name == "absorber") return Task::absorber;
    if (name == "fit") return Task::fit;
    if (name == "plate") return Task::plate;
    if (name == "duct") return Task::duct;
    if (name == "scene") return Task::scene;
    if (name == "median") return Task::median;
    throw std::invalid_argument("unknown task: " + name);
}

const char* task_name(Task task) {
    switch (task) {
        case Task::absorber: return "absorber";
        case Task::fit: return "fit";
        case Task::plate: return "plate";
        case Task::duct: return "duct";
        case Task::scene: return "scene";
        case Task::median: return "median";
    }
    return "?";
}

void RunConfig::validate() const {
    require(!output_path.empty(), "output path not set");
    for (Polarization p : pols) {
        bool stack_task = task == Task::absorber || task == Task::fit;
        require(stack_task ? is_stack_pol(p) : is_scene_pol(p),
                std::string("polarization ") + pol_name(p) + " not valid for task " +
                    task_name(task));
    }
    if (task != Task::median) {
        // grid construction validates bounds/steps
        (void)FrequencyGrid::from_range(f_lo_hz, f_hi_hz, f_step_hz);
    }
    switch (task) {
        case Task::absorber:
        case Task::fit:
            require_file(stack_path, "stack file");
            if (task == Task::fit) rcs::validate(fit);
            break;
        case Task::plate:
            (void)AngleGrid::from_range(theta_deg, phi_lo_deg, phi_hi_deg, phi_step_deg);
            if (plate_coating != "pec") require_file(plate_coating, "plate coating stack");
            require(plate_a_m > 0.0 && plate_b_m > 0.0, "plate dimensions must be positive");
            break;
        case Task::duct:
            (void)AngleGrid::from_range(theta_deg, phi_lo_deg, phi_hi_deg, phi_step_deg);
            rcs::validate(sbr);
            require(!duct_lengths_m.empty(), "duct needs at least one length");
            for (double l : duct_lengths_m) require(l > 0.0, "duct length must be positive");
            require(duct_diameter_m > 0.0, "duct diameter must be positive");
            if (wall_coating != "pec") require_file(wall_coating, "wall coating stack");
            if (termination_coating != "pec")
                require_file(termination_coating, "termination coating stack");
            break;
        case Task::scene:
            (void)AngleGrid::from_range(theta_deg, phi_lo_deg, phi_hi_deg, phi_step_deg);
            rcs::validate(sbr);
            require_file(scene_path, "scene file");
            break;
        case Task::median:
            require_file(input_csv, "input csv");
            break;
    }
    require(median_phi_lo_deg <= median_phi_hi_deg, "median window inverted");
    require(rivet_fraction >= 0.0 && rivet_fraction <= 1.0, "rivet fraction outside [0, 1]");
}

std::vector<std::string> run(const RunConfig& config) {
    config.validate();
    switch (config.task) {
        case Task::absorber: return run_absorber(config);
        case Task::fit: return run_fit(config);
        case Task::plate: return run_plate(config);
        case Task::duct: return run_duct(config);
        case Task::scene: return run_scene_task(config);
        case Task::median: return run_median(config);
    }
    throw std::logic_error("unreachable task");
}

} // namespace rcs
