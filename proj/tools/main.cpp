#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "coaxflux/config.hpp"
#include "coaxflux/constants.hpp"
#include "coaxflux/csv.hpp"
#include "coaxflux/error.hpp"
#include "coaxflux/filter.hpp"
#include "coaxflux/flux.hpp"
#include "coaxflux/kernels.hpp"
#include "coaxflux/manifest.hpp"
#include "coaxflux/material.hpp"
#include "coaxflux/modes.hpp"
#include "coaxflux/nrw.hpp"
#include "coaxflux/presets.hpp"
#include "coaxflux/touchstone.hpp"

namespace fs = std::filesystem;
using namespace coaxflux;

namespace {

struct CommonOpts {
    std::string out_dir = ".";
    std::string kernels = "auto";
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--out", c.out_dir, "Output directory");
    cmd->add_option("--kernels", c.kernels,
                    "Kernel backend: auto|scalar|avx2");
}

std::string out_path(const CommonOpts& c, const std::string& name) {
    fs::create_directories(c.out_dir);
    return (fs::path(c.out_dir) / name).string();
}

struct CableOpts {
    std::string cable = "ut086";
    double a_mm = 0, b_mm = 0;
    double sigma = 1.41e6;
    double eps_p = 2.08;
    double tan_d = 0.0004;
};

void add_cable(CLI::App* cmd, CableOpts& c) {
    cmd->add_option("--cable", c.cable, "ut086|ut047|ut034|custom");
    cmd->add_option("--a-mm", c.a_mm, "Custom inner conductor radius [mm]");
    cmd->add_option("--b-mm", c.b_mm, "Custom outer conductor inner radius [mm]");
    cmd->add_option("--sigma-s-per-m", c.sigma, "Custom conductor conductivity");
    cmd->add_option("--eps-p", c.eps_p, "Custom dielectric eps'");
    cmd->add_option("--tan-d", c.tan_d, "Custom dielectric loss tangent");
}

CoaxGeometry resolve_cable(const CableOpts& c) {
    if (c.cable != "custom") return cable_preset(c.cable);
    if (!(c.a_mm > 0) || !(c.b_mm > c.a_mm))
        throw ConfigError("custom cable requires --a-mm and --b-mm with "
                          "0 < a < b");
    CoaxGeometry g;
    g.inner_radius_m = c.a_mm * 1e-3;
    g.outer_radius_m = c.b_mm * 1e-3;
    g.conductor = MaterialSpectrum::conductor("custom-conductor", c.sigma);
    g.dielectric =
        MaterialSpectrum::constant_dielectric("custom-dielectric", c.eps_p,
                                              c.tan_d);
    return g;
}

CryostatChain chain_from_config(const Config& cfg) {
    if (!cfg.has("chain", "temps_k")) return default_chain(
        cfg.has("chain", "length_scale") ? cfg.get_double("chain", "length_scale")
                                         : 1.0);
    auto temps = cfg.get_double_list("chain", "temps_k");
    auto lengths = cfg.get_double_list("chain", "lengths_mm");
    auto attens = cfg.get_double_list("chain", "attenuators_db");
    if (temps.size() != lengths.size() + 1 || lengths.size() != attens.size())
        throw ConfigError("chain: need N+1 temps_k, N lengths_mm, N "
                          "attenuators_db");
    double scale = cfg.get_double_or("chain", "length_scale", 1.0);
    CryostatChain chain;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        StageSegment s;
        s.t_hot_k = temps[i];
        s.t_cold_k = temps[i + 1];
        s.length_m = lengths[i] * 1e-3 * scale;
        s.attenuator_db = attens[i];
        chain.stages.push_back(s);
    }
    chain.validate();
    return chain;
}

CoaxGeometry cable_from_config(const Config& cfg) {
    std::string id = cfg.get_string_or("chain", "cable", "ut086");
    if (id != "custom") return cable_preset(id);
    CableOpts c;
    c.cable = "custom";
    c.a_mm = cfg.get_double("chain", "a_mm");
    c.b_mm = cfg.get_double("chain", "b_mm");
    c.sigma = cfg.get_double_or("chain", "sigma_s_per_m", 1.41e6);
    c.eps_p = cfg.get_double_or("chain", "eps_p", 2.08);
    c.tan_d = cfg.get_double_or("chain", "tan_d", 0.0004);
    return resolve_cable(c);
}

// ---------------------------------------------------------------- modes ----

int run_modes(const CommonOpts& common, const CableOpts& cable_opts,
              const std::string& family, double max_f_ghz, double grid_ghz,
              int max_n) {
    CoaxGeometry geom = resolve_cable(cable_opts);
    const double max_f = max_f_ghz * 1e9;

    bool want_tem = family == "all" || family == "tem";
    bool want_te = family == "all" || family == "te";
    bool want_tm = family == "all" || family == "tm";
    if (!want_tem && !want_te && !want_tm)
        throw ConfigError("--family must be te|tm|tem|all");

    ResultManifest manifest;
    manifest.pipeline = "modes";
    manifest.parameters["cable"] = cable_opts.cable;
    manifest.parameters["family"] = family;
    manifest.parameters["max_f_ghz"] = format_number(max_f_ghz);
    manifest.parameters["grid_ghz"] = format_number(grid_ghz);

    // Cutoff table.
    std::vector<std::vector<double>> cutoff_rows;
    std::vector<std::string> cutoff_labels;
    for (ModeFamily fam : {ModeFamily::TE, ModeFamily::TM}) {
        if ((fam == ModeFamily::TE && !want_te) ||
            (fam == ModeFamily::TM && !want_tm))
            continue;
        for (const auto& md : find_cutoffs(geom, fam, max_n, max_f)) {
            cutoff_labels.push_back(md.mode.label());
            cutoff_rows.push_back({md.k_c, md.f_c});
        }
    }
    std::string cutoffs_csv = out_path(common, "cutoffs.csv");
    {
        std::vector<std::string> cols = {"mode", "k_c_per_m", "f_c_hz"};
        std::ofstream out(cutoffs_csv);
        if (!out) throw IoError("cannot write " + cutoffs_csv);
        out << "mode,k_c_per_m,f_c_hz\n";
        for (std::size_t i = 0; i < cutoff_rows.size(); ++i)
            out << cutoff_labels[i] << "," << format_number(cutoff_rows[i][0])
                << "," << format_number(cutoff_rows[i][1]) << "\n";
    }
    manifest.outputs.push_back(cutoffs_csv);

    // Attenuation sweep.
    auto channels = cable_channels(geom, max_f, want_tem, want_te, want_tm);
    std::string sweep_csv = out_path(common, "modes_attenuation.csv");
    {
        std::ofstream out(sweep_csv);
        if (!out) throw IoError("cannot write " + sweep_csv);
        out << "f_hz,mode,alpha_db_per_m\n";
        const double df = grid_ghz * 1e9;
        for (const auto& ch : channels) {
            for (double f = df; f <= max_f * (1 + 1e-12); f += df) {
                if (f <= ch.f_c_hz) continue;
                out << format_number(f) << "," << ch.mode.label() << ","
                    << format_number(ch.alpha_db_per_m(f)) << "\n";
            }
        }
    }
    manifest.outputs.push_back(sweep_csv);
    manifest.write(out_path(common, "manifest.json"));

    std::cout << "modes: " << cutoff_rows.size() << " cutoffs, "
              << channels.size() << " channels swept to " << max_f_ghz
              << " GHz\n";
    return 0;
}

// ----------------------------------------------------------------- flux ----

FluxSpectrum flux_from_config(const Config& cfg, CoaxGeometry& geom_out,
                              CryostatChain& chain_out) {
    geom_out = cable_from_config(cfg);
    chain_out = chain_from_config(cfg);

    auto band = cfg.get_double_list("flux", "band_ghz");
    if (band.size() != 2) throw ConfigError("flux: band_ghz needs two values");
    if (!(band[0] > 0) || !(band[1] > band[0]))
        throw ConfigError("flux: band_ghz must satisfy 0 < lo < hi (got " +
                          format_number(band[0]) + ", " +
                          format_number(band[1]) + ")");
    std::string scen_str =
        cfg.get_string_or("flux", "scenario", "attenuators_active");
    AttenuatorScenario scen;
    if (scen_str == "attenuators_active") scen = AttenuatorScenario::Active;
    else if (scen_str == "attenuators_bypassed")
        scen = AttenuatorScenario::Bypassed;
    else
        throw ConfigError("flux: scenario must be attenuators_active or "
                          "attenuators_bypassed");

    FluxOptions opts;
    opts.grid_spacing_hz = cfg.get_double_or("flux", "grid_ghz", 0.25) * 1e9;
    opts.ode_steps_per_segment =
        static_cast<int>(cfg.get_double_or("flux", "ode_steps", 1000));

    double max_mode_f =
        cfg.get_double_or("flux", "max_mode_f_ghz", band[1]) * 1e9;
    bool include_tm = cfg.get_string_or("flux", "include_tm", "false") == "true";
    auto channels = cable_channels(geom_out, max_mode_f, true, true, include_tm);

    return chain_flux(chain_out, channels, {band[0] * 1e9, band[1] * 1e9}, scen,
                      opts);
}

int run_flux(const CommonOpts& common, const std::string& config_path) {
    Config cfg = Config::from_file(config_path);
    CoaxGeometry geom;
    CryostatChain chain;
    FluxSpectrum spec = flux_from_config(cfg, geom, chain);

    ResultManifest manifest;
    manifest.pipeline = "flux";
    manifest.add_input(config_path);
    manifest.parameters["band_lo_hz"] = format_number(spec.band_lo_hz);
    manifest.parameters["band_hi_hz"] = format_number(spec.band_hi_hz);
    manifest.parameters["band_flux_per_s"] = format_number(spec.band_flux_per_s);

    std::string flux_csv = out_path(common, "flux.csv");
    {
        std::ofstream out(flux_csv);
        if (!out) throw IoError("cannot write " + flux_csv);
        out << "# band_flux_per_s = " << format_number(spec.band_flux_per_s)
            << "\n";
        out << "f_hz,mode,N_per_hz_per_s\n";
        for (std::size_t c = 0; c < spec.mode_labels.size(); ++c)
            for (std::size_t i = 0; i < spec.f_hz.size(); ++i)
                out << format_number(spec.f_hz[i]) << "," << spec.mode_labels[c]
                    << "," << format_number(spec.per_mode[c][i]) << "\n";
        for (std::size_t i = 0; i < spec.f_hz.size(); ++i)
            out << format_number(spec.f_hz[i]) << ",sum,"
                << format_number(spec.summed[i]) << "\n";
    }
    manifest.outputs.push_back(flux_csv);
    manifest.write(out_path(common, "manifest.json"));

    std::cout << "band_flux_per_s = " << format_number(spec.band_flux_per_s)
              << "\n";
    return 0;
}

// ------------------------------------------------------------------ nrw ----

int run_nrw(const CommonOpts& common, const std::vector<std::string>& s2p_paths,
            const std::vector<double>& thickness_mm, double a_wg_mm,
            double b_wg_mm, int n_max, double threshold,
            const std::string& out_name) {
    if (s2p_paths.size() != thickness_mm.size() || s2p_paths.size() < 2)
        throw ConfigError("nrw: need >= 2 --s2p files, each with a matching "
                          "--thickness-mm");

    ResultManifest manifest;
    manifest.pipeline = "nrw";
    manifest.parameters["n_max"] = std::to_string(n_max);
    manifest.parameters["threshold"] = format_number(threshold);

    std::vector<ThicknessBranchSet> sets;
    std::vector<std::string> warnings;
    NrwOptions nrw_opts;
    nrw_opts.warnings = &warnings;
    for (std::size_t i = 0; i < s2p_paths.size(); ++i) {
        WaveguideSection sec;
        sec.broad_wall_m = a_wg_mm * 1e-3;
        sec.narrow_wall_m = b_wg_mm * 1e-3;
        sec.thickness_m = thickness_mm[i] * 1e-3;
        auto records = parse_touchstone(s2p_paths[i]);
        manifest.add_input(s2p_paths[i]);
        sets.push_back(invert_all_branches(records, sec, n_max, nrw_opts));
    }
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

    DisambiguationResult res = disambiguate_branches(sets, threshold);

    std::string mat_csv = out_path(common, out_name);
    std::vector<std::vector<double>> rows;
    for (const auto& s : res.merged)
        rows.push_back({s.f_hz, s.eps_p(), -s.eps_r.imag(), s.mu_p(),
                        -s.mu_r.imag(), s.tan_delta(), s.tan_delta_m(),
                        static_cast<double>(s.branch)});
    char note[160];
    std::snprintf(note, sizeof note,
                  "branch selection: d=%.4g mm n=%d with d=%.4g mm n=%d, "
                  "band-averaged rel discrepancy %.3g%%",
                  res.thickness_a_m * 1e3, res.branch_a, res.thickness_b_m * 1e3,
                  res.branch_b, res.rel_discrepancy * 100);
    write_csv(mat_csv,
              {"f_hz", "eps_p", "eps_pp", "mu_p", "mu_pp", "tan_d", "tan_dm",
               "branch"},
              rows, {note});
    manifest.outputs.push_back(mat_csv);

    // per-branch real parts, the series behind the disambiguation choice
    std::string branches_csv = out_path(common, "nrw_branches.csv");
    std::vector<std::vector<double>> brows;
    for (const auto& set : sets)
        for (std::size_t n = 0; n < set.branches.size(); ++n)
            for (const auto& s : set.branches[n])
                brows.push_back({s.f_hz, set.thickness_m * 1e3,
                                 static_cast<double>(n), s.eps_p(), s.mu_p()});
    write_csv(branches_csv, {"f_hz", "thickness_mm", "branch", "eps_p", "mu_p"},
              brows);
    manifest.outputs.push_back(branches_csv);
    manifest.write(out_path(common, "manifest.json"));

    std::cout << note << "\n";
    return 0;
}

// --------------------------------------------------------------- filter ----

int run_filter(const CommonOpts& common, const std::string& fill_path,
               double d_pin_mm, double bore_mm, bool optimize,
               double length_mm, std::vector<double> band_ghz,
               std::vector<double> match_band_ghz, double sigma,
               double grid_ghz, const std::string& measured_s21_path,
               const std::string& chain_config) {
    MaterialSpectrum fill =
        fill_path == "vacuum"
            ? vacuum_fill()
            : MaterialSpectrum::from_csv(fill_path, "", MaterialKind::Absorber);

    ResultManifest manifest;
    manifest.pipeline = "filter";
    if (fill_path != "vacuum") manifest.add_input(fill_path);
    manifest.parameters["d_pin_mm"] = format_number(d_pin_mm);
    manifest.parameters["length_mm"] = format_number(length_mm);

    if (band_ghz.size() != 2) throw ConfigError("filter: --band-ghz lo hi");
    std::pair<double, double> band{band_ghz[0] * 1e9, band_ghz[1] * 1e9};

    double bore = bore_mm * 1e-3;
    if (optimize) {
        std::pair<double, double> mband{1e9, 18e9};
        if (match_band_ghz.size() == 2)
            mband = {match_band_ghz[0] * 1e9, match_band_ghz[1] * 1e9};
        BoreOptimum opt = optimize_bore(d_pin_mm * 1e-3, fill, mband);
        std::cout << "optimal bore D* = " << format_number(opt.bore_m * 1e3)
                  << " mm, average reflection "
                  << format_number(opt.avg_reflection_db) << " dB\n";
        manifest.parameters["bore_opt_mm"] = format_number(opt.bore_m * 1e3);
        manifest.parameters["avg_reflection_db"] =
            format_number(opt.avg_reflection_db);
        if (!(bore > 0)) bore = opt.bore_m;
    }
    if (!(bore > 0))
        throw ConfigError("filter: provide --bore-mm or --optimize");
    manifest.parameters["bore_mm"] = format_number(bore * 1e3);

    FilterGeometry geom;
    geom.pin_diameter_m = d_pin_mm * 1e-3;
    geom.bore_diameter_m = bore;
    geom.length_m = length_mm * 1e-3;
    geom.fill = fill;
    geom.conductor = MaterialSpectrum::conductor("filter-conductor", sigma);
    geom.validate();

    if (match_band_ghz.size() == 2 && !optimize) {
        double avg = average_reflection_db(
            geom.pin_diameter_m, geom.bore_diameter_m, fill,
            {match_band_ghz[0] * 1e9, match_band_ghz[1] * 1e9});
        std::cout << "average reflection over match band: "
                  << format_number(avg) << " dB\n";
        manifest.parameters["avg_reflection_db"] = format_number(avg);
    }

    // Attenuation sweep for TEM and TE11.
    const double kc = filter_te11_kc(geom);
    std::cout << "filter TE11 kc = " << format_number(kc) << " 1/m, fc = "
              << format_number(filter_te11_fc(geom) / 1e9) << " GHz\n";

    std::string att_csv = out_path(common, "filter_attenuation.csv");
    {
        std::ofstream out(att_csv);
        if (!out) throw IoError("cannot write " + att_csv);
        out << "f_hz,mode,alpha_dm_db_per_m,alpha_c_db_per_m,A_db\n";
        const double df = grid_ghz * 1e9;
        for (ModeFamily fam : {ModeFamily::TEM, ModeFamily::TE}) {
            for (double f = band.first; f <= band.second * (1 + 1e-12);
                 f += df) {
                if (fam == ModeFamily::TE) {
                    double em = fill.eps_p(f) * fill.mu_p(f);
                    double k = 2 * constants::pi * f * std::sqrt(em) /
                               constants::light_speed;
                    if (k <= kc) continue;
                }
                LossBreakdown l = filter_attenuation(geom, fam, f);
                out << format_number(f) << ","
                    << (fam == ModeFamily::TEM ? "TEM" : "TE11") << ","
                    << format_number(l.alpha_dm_db_per_m) << ","
                    << format_number(l.alpha_c_db_per_m) << ","
                    << format_number(l.attenuation_db(geom.length_m)) << "\n";
            }
        }
    }
    manifest.outputs.push_back(att_csv);

    // Post-filter flux when a chain config is supplied.
    if (!chain_config.empty()) {
        Config cfg = Config::from_file(chain_config);
        manifest.add_input(chain_config);
        CoaxGeometry cable;
        CryostatChain chain;
        FluxSpectrum chain_out = flux_from_config(cfg, cable, chain);

        ResidualFluxOptions opts;
        if (!measured_s21_path.empty()) {
            opts.measured = load_measured_s21(measured_s21_path);
            opts.use_measured_path = true;
            manifest.add_input(measured_s21_path);
            // instrument noise floor limits measured transmission, so the
            // low-frequency branch is an upper bound on the residual flux
            manifest.parameters["low_band_path"] =
                "measured-s21 (upper bound below " +
                format_number(opts.measured_crossover_hz / 1e9) + " GHz)";
        }
        FluxSpectrum post =
            residual_flux(chain_out, geom, cable, chain.base_temperature_k(),
                          {chain_out.band_lo_hz, chain_out.band_hi_hz}, opts);

        std::string post_csv = out_path(common, "residual_flux.csv");
        std::ofstream out(post_csv);
        if (!out) throw IoError("cannot write " + post_csv);
        out << "# band_flux_per_s = " << format_number(post.band_flux_per_s)
            << "\n";
        out << "f_hz,mode,N_per_hz_per_s\n";
        for (std::size_t c = 0; c < post.mode_labels.size(); ++c)
            for (std::size_t i = 0; i < post.f_hz.size(); ++i)
                out << format_number(post.f_hz[i]) << "," << post.mode_labels[c]
                    << "," << format_number(post.per_mode[c][i]) << "\n";
        for (std::size_t i = 0; i < post.f_hz.size(); ++i)
            out << format_number(post.f_hz[i]) << ",sum,"
                << format_number(post.summed[i]) << "\n";
        manifest.outputs.push_back(post_csv);
        std::cout << "post-filter band_flux_per_s = "
                  << format_number(post.band_flux_per_s) << "\n";
    }

    manifest.write(out_path(common, "manifest.json"));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coaxflux: cryogenic coax noise-photon transport, material "
                 "extraction and absorptive filter design"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("coaxflux ") + tool_version);

    CommonOpts modes_common, flux_common, nrw_common, filter_common;

    // modes
    auto* modes_cmd =
        app.add_subcommand("modes", "Cutoffs and attenuation per mode");
    CableOpts modes_cable;
    std::string modes_family = "all";
    double modes_max_f = 600.0, modes_grid = 0.5;
    int modes_max_n = -1;
    add_common(modes_cmd, modes_common);
    add_cable(modes_cmd, modes_cable);
    modes_cmd->add_option("--family", modes_family, "te|tm|tem|all");
    modes_cmd->add_option("--max-f-ghz", modes_max_f, "Sweep/cutoff limit");
    modes_cmd->add_option("--grid-ghz", modes_grid, "Sweep spacing");
    modes_cmd->add_option("--max-n", modes_max_n,
                          "Max azimuthal index (-1 = auto)");

    // flux
    auto* flux_cmd =
        app.add_subcommand("flux", "Noise-photon flux through a wiring chain");
    std::string flux_config;
    add_common(flux_cmd, flux_common);
    flux_cmd->add_option("--config", flux_config, "Chain/band config file")
        ->required();

    // nrw
    auto* nrw_cmd = app.add_subcommand(
        "nrw", "Extract eps_r/mu_r from filled-waveguide S-parameters");
    std::vector<std::string> nrw_s2p;
    std::vector<double> nrw_thickness;
    double nrw_a = 2.54, nrw_b = 1.27, nrw_threshold = 0.05;
    int nrw_nmax = 8;
    std::string nrw_out_name = "material.csv";
    add_common(nrw_cmd, nrw_common);
    nrw_cmd->add_option("--s2p", nrw_s2p, "Touchstone file (repeat per "
                                          "thickness)");
    nrw_cmd->add_option("--thickness-mm", nrw_thickness,
                        "Fill thickness [mm] (repeat, matches --s2p order)");
    nrw_cmd->add_option("--a-wg-mm", nrw_a, "Waveguide broad wall [mm]");
    nrw_cmd->add_option("--b-wg-mm", nrw_b, "Waveguide narrow wall [mm]");
    nrw_cmd->add_option("--n-max", nrw_nmax, "Largest branch index");
    nrw_cmd->add_option("--threshold", nrw_threshold,
                        "Band-averaged agreement threshold");
    nrw_cmd->add_option("--out-name", nrw_out_name, "Material CSV filename");

    // filter
    auto* filter_cmd =
        app.add_subcommand("filter", "Absorptive filter design and residual "
                                     "flux");
    std::string filter_fill, filter_s21, filter_chain;
    double filter_pin = 1.27, filter_bore = 0, filter_len = 35.8;
    double filter_sigma = 67e6, filter_grid = 0.25;
    bool filter_optimize = false;
    std::vector<double> filter_band = {75, 110}, filter_match_band;
    add_common(filter_cmd, filter_common);
    filter_cmd->add_option("--fill", filter_fill,
                           "Fill material CSV or 'vacuum'")
        ->required();
    filter_cmd->add_option("--d-pin-mm", filter_pin, "Pin diameter [mm]");
    filter_cmd->add_option("--bore-mm", filter_bore, "Bore diameter [mm]");
    filter_cmd->add_flag("--optimize", filter_optimize,
                         "Search the bore diameter minimizing reflection");
    filter_cmd->add_option("--length-mm", filter_len, "Filter length [mm]");
    filter_cmd->add_option("--band-ghz", filter_band,
                           "Attenuation band lo hi [GHz]")
        ->expected(2);
    filter_cmd->add_option("--match-band-ghz", filter_match_band,
                           "Impedance-matching band lo hi [GHz]")
        ->expected(2);
    filter_cmd->add_option("--sigma-s-per-m", filter_sigma,
                           "Filter body conductivity");
    filter_cmd->add_option("--grid-ghz", filter_grid, "Attenuation sweep grid");
    filter_cmd->add_option("--measured-s21", filter_s21,
                           "Measured filter S21 CSV (low-frequency path)");
    filter_cmd->add_option("--config", filter_chain,
                           "Chain config: also emit post-filter flux");

    CLI11_PARSE(app, argc, argv);

    try {
        if (modes_cmd->parsed()) {
            kernels::select_backend(modes_common.kernels.c_str());
            return run_modes(modes_common, modes_cable, modes_family,
                             modes_max_f, modes_grid, modes_max_n);
        }
        if (flux_cmd->parsed()) {
            kernels::select_backend(flux_common.kernels.c_str());
            return run_flux(flux_common, flux_config);
        }
        if (nrw_cmd->parsed()) {
            kernels::select_backend(nrw_common.kernels.c_str());
            return run_nrw(nrw_common, nrw_s2p, nrw_thickness, nrw_a, nrw_b,
                           nrw_nmax, nrw_threshold, nrw_out_name);
        }
        if (filter_cmd->parsed()) {
            kernels::select_backend(filter_common.kernels.c_str());
            return run_filter(filter_common, filter_fill, filter_pin,
                              filter_bore, filter_optimize, filter_len,
                              filter_band, filter_match_band, filter_sigma,
                              filter_grid, filter_s21, filter_chain);
        }
    } catch (const Error& e) {
        std::cerr << "error[" << e.category() << "]: " << e.what() << "\n";
        if (e.category() == "config") return 2;
        if (e.category() == "io" || e.category() == "parse") return 3;
        if (e.category() == "domain") return 4;
        if (e.category() == "numeric") return 5;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
