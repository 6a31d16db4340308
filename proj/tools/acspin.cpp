// Command-line front end: sweep, levels, symmetry-check, inl, perturbation.
// Every configuration key can come from a flat `key = value` file (--config)
// and can be overridden by the flag of the same name.
#include <cmath>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "acspin/config.hpp"
#include "acspin/csv.hpp"
#include "acspin/harmonic_balance.hpp"
#include "acspin/perturbation.hpp"
#include "acspin/spectrum.hpp"
#include "acspin/symmetry.hpp"
#include "acspin/sweep.hpp"

namespace {

using acspin::format_double;

struct KeyFlags {
    std::string config_path;
    std::map<std::string, std::string> values;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "flat key = value configuration file");
        for (const char* key :
             {"kind", "h0", "phi", "jx", "jy", "jz", "epsilon", "omega", "drive_harmonics",
              "beta", "nu", "target", "axis", "grid_start", "grid_stop", "grid_points",
              "grid_spacing", "grid_default_inl", "method", "steps_per_period", "max_dt",
              "tolerance", "max_periods", "n_harmonics", "refine_passes", "refine_points",
              "refine_peaks", "output", "workers"}) {
            cmd->add_option("--" + std::string(key), values[key],
                            "override config key '" + std::string(key) + "'");
        }
    }

    acspin::KeyValues merged(CLI::App* cmd) const {
        acspin::KeyValues kv;
        if (!config_path.empty()) kv = acspin::load_config_file(config_path);
        acspin::KeyValues overrides;
        for (const auto& [key, value] : values)
            if (cmd->count("--" + key) > 0) overrides[key] = value;
        return acspin::merge(kv, overrides);
    }
};

void print_sweep(const acspin::SweepConfig& config, const acspin::SweepResult& result) {
    if (config.output.empty()) std::cout << acspin::sweep_csv(result);
    if (result.metrics.i_nl)
        std::cerr << "I_NL = " << format_double(*result.metrics.i_nl) << " %\n";
    for (const auto& [omega, sy] : result.metrics.peak_positions)
        std::cerr << "peak: omega = " << format_double(omega)
                  << "  |Sy~| = " << format_double(sy) << "\n";
}

int cmd_sweep(CLI::App* cmd, const KeyFlags& flags) {
    const acspin::SweepConfig config = acspin::build_sweep_config(flags.merged(cmd));
    print_sweep(config, acspin::run_sweep(config));
    return 0;
}

int cmd_inl(CLI::App* cmd, const KeyFlags& flags) {
    // I_NL preset: default resonance-resolving grid plus two refinement passes.
    acspin::KeyValues preset = {{"grid_default_inl", "true"}, {"refine_passes", "2"}};
    const acspin::SweepConfig config =
        acspin::build_sweep_config(acspin::merge(preset, flags.merged(cmd)));
    const acspin::SweepResult result = acspin::run_sweep(config);
    if (!config.output.empty()) std::cerr << "rows written to " << config.output << "\n";
    std::cout << "I_NL = " << format_double(result.metrics.i_nl.value()) << " %\n";
    for (const auto& [omega, sy] : result.metrics.peak_positions)
        std::cout << "peak: omega = " << format_double(omega)
                  << "  |Sy~| = " << format_double(sy) << "\n";
    return 0;
}

int cmd_levels(CLI::App* cmd, const KeyFlags& flags, double h_start, double h_stop,
               int points) {
    acspin::KeyValues kv = flags.merged(cmd);
    const acspin::SystemSpec spec = acspin::build_system_spec(kv);
    const acspin::LevelScan scan = acspin::level_scan(spec, h_start, h_stop, points);
    const std::string output = kv.count("output") ? kv.at("output") : "";
    if (output.empty())
        std::cout << acspin::level_scan_csv(scan);
    else
        acspin::write_file(output, acspin::level_scan_csv(scan));
    if (scan.singlet_index) {
        const int idx = *scan.singlet_index;
        bool flat = true;
        for (const auto& row : scan.levels)
            if (std::abs(row[idx] - scan.levels.front()[idx]) > 1e-9) flat = false;
        std::cerr << "singlet branch: E" << (idx + 1)
                  << (flat ? " (flat)\n" : " at the first scan point (crosses other branches in this range)\n");
    }
    return 0;
}

int cmd_symmetry(CLI::App* cmd, const KeyFlags& flags, int verify_case, int horizon) {
    const acspin::KeyValues kv = flags.merged(cmd);
    const acspin::SystemSpec spec = acspin::build_system_spec(kv);
    const acspin::ThermalParams params = acspin::build_thermal_params(kv);
    const acspin::SymmetryReport report = acspin::classify(spec, params);
    std::cout << "case 1 (nu=0, gamma=0, odd drive):          "
              << (report.case1 ? "applies" : "-") << "\n";
    std::cout << "case 2 (nu=0, even drive):                  "
              << (report.case2 ? "applies" : "-") << "\n";
    std::cout << "case 3 (nu>0, gamma=0, antiperiodic drive): "
              << (report.case3 ? "applies" : "-") << "\n";
    std::string forced;
    for (const auto& name : report.forced_zero) forced += (forced.empty() ? "" : ", ") + name;
    std::cout << "forced zero averages: " << (forced.empty() ? "none" : forced) << "\n";
    for (const auto& line : report.map_descriptions) std::cout << line << "\n";
    if (verify_case > 0) {
        const double dev = acspin::verify_trajectory_symmetry(spec, params, verify_case,
                                                              horizon, true);
        std::cout << "case " << verify_case << " trajectory identity deviation over "
                  << horizon << " periods: " << format_double(dev) << "\n";
    }
    return 0;
}

int cmd_perturbation(CLI::App* cmd, const KeyFlags& flags) {
    const acspin::KeyValues kv = flags.merged(cmd);
    const acspin::SystemSpec spec = acspin::build_system_spec(kv);
    const acspin::ThermalParams params = acspin::build_thermal_params(kv);
    if (spec.kind != acspin::SpinKind::SingleSpin)
        throw acspin::InvalidParams("perturbation: closed forms cover the single spin");
    if (spec.drive.harmonics.size() != 1 || spec.drive.harmonics[0].n != 1 ||
        spec.drive.harmonics[0].phase != 0.0)
        throw acspin::InvalidParams("perturbation: needs the plain cosine drive");
    const double eps = spec.drive.harmonics[0].amplitude;
    const auto p = acspin::perturbative_averages(spec.h0, spec.phi, params.beta, params.nu,
                                                 eps, spec.drive.omega);
    std::cout << "A0x = " << format_double(p.a0x) << "\n";
    std::cout << "A0y = " << format_double(p.a0y) << "\n";
    std::cout << "A0z = " << format_double(p.a0z) << "\n";
    std::cout << "valid second-order regime: " << (p.valid() ? "yes" : "no")
              << "  (eps < 1/2: " << (p.eps_small ? "yes" : "no")
              << ", eps < nu/2: " << (p.eps_below_nu ? "yes" : "no") << ")\n";
    const auto r = acspin::resonance_averages(spec.h0, spec.phi, params.beta, params.nu, eps);
    std::cout << "at resonance omega = h0: A0x = " << format_double(r.a0x)
              << ", A0y = " << format_double(r.a0y) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ac-driven dissipative spin toolkit"};
    app.require_subcommand(1);

    KeyFlags sweep_flags, inl_flags, levels_flags, sym_flags, pert_flags;

    CLI::App* sweep = app.add_subcommand("sweep", "steady-state sweep over omega/nu/beta");
    sweep_flags.attach(sweep);

    CLI::App* inl = app.add_subcommand("inl", "nonlinearity metric I_NL on the default grid");
    inl_flags.attach(inl);

    CLI::App* levels = app.add_subcommand("levels", "frozen-field level scan");
    levels_flags.attach(levels);
    double h_start = -2.0, h_stop = 2.0;
    int points = 201;
    levels->add_option("--h-start", h_start, "frozen drive value range start");
    levels->add_option("--h-stop", h_stop, "frozen drive value range stop");
    levels->add_option("--points", points, "number of scan points");

    CLI::App* sym = app.add_subcommand("symmetry-check", "classify protective symmetries");
    sym_flags.attach(sym);
    int verify_case = 0, horizon = 5;
    sym->add_option("--verify", verify_case, "verify trajectory identity for case 1, 2 or 3");
    sym->add_option("--horizon", horizon, "verification horizon in drive periods");

    CLI::App* pert = app.add_subcommand("perturbation", "second-order closed-form averages");
    pert_flags.attach(pert);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) return cmd_sweep(sweep, sweep_flags);
        if (inl->parsed()) return cmd_inl(inl, inl_flags);
        if (levels->parsed()) return cmd_levels(levels, levels_flags, h_start, h_stop, points);
        if (sym->parsed()) return cmd_symmetry(sym, sym_flags, verify_case, horizon);
        if (pert->parsed()) return cmd_perturbation(pert, pert_flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
