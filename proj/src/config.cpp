#include "acspin/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace acspin {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        // system
        "kind", "h0", "phi", "jx", "jy", "jz", "epsilon", "omega", "drive_harmonics",
        // thermal
        "beta", "nu", "target",
        // sweep axis and grid
        "axis", "grid_start", "grid_stop", "grid_points", "grid_spacing", "grid_default_inl",
        // solver
        "method", "steps_per_period", "max_dt", "tolerance", "max_periods", "n_harmonics",
        // refinement and output
        "refine_passes", "refine_points", "refine_peaks", "output", "workers"};
    return keys;
}

double get_double(const KeyValues& kv, const std::string& key, double fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: '" + it->second + "'");
    }
}

int get_int(const KeyValues& kv, const std::string& key, int fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        std::size_t pos = 0;
        const int v = std::stoi(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not an integer: '" + it->second + "'");
    }
}

bool get_bool(const KeyValues& kv, const std::string& key, bool fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    const std::string& v = it->second;
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config key '" + key + "': not a boolean: '" + v + "'");
}

std::string get_string(const KeyValues& kv, const std::string& key, std::string fallback) {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

// "n:amplitude[:phase];n:amplitude[:phase];..."
std::vector<Harmonic> parse_harmonics(const std::string& text) {
    std::vector<Harmonic> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        std::stringstream fs(item);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(fs, field, ':')) fields.push_back(trim(field));
        if (fields.size() < 2 || fields.size() > 3)
            throw ConfigError("drive_harmonics: expected n:amplitude[:phase], got '" + item +
                              "'");
        try {
            Harmonic hm;
            hm.n = std::stoi(fields[0]);
            hm.amplitude = std::stod(fields[1]);
            hm.phase = fields.size() == 3 ? std::stod(fields[2]) : 0.0;
            out.push_back(hm);
        } catch (const std::exception&) {
            throw ConfigError("drive_harmonics: malformed term '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigError("drive_harmonics: no terms given");
    return out;
}

void check_known(const KeyValues& kv) {
    for (const auto& [key, value] : kv)
        if (!known_keys().count(key)) throw ConfigError("unknown config key '" + key + "'");
}

}  // namespace

KeyValues parse_config_text(const std::string& text) {
    KeyValues kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        kv[key] = value;
    }
    return kv;
}

KeyValues load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

KeyValues merge(const KeyValues& base, const KeyValues& overrides) {
    KeyValues out = base;
    for (const auto& [key, value] : overrides) out[key] = value;
    return out;
}

SystemSpec build_system_spec(const KeyValues& kv) {
    const std::string kind = get_string(kv, "kind", "single");
    const double h0 = get_double(kv, "h0", 3.0);
    const double phi = get_double(kv, "phi", pi / 4);
    const double epsilon = get_double(kv, "epsilon", std::sqrt(2.0));
    const double omega = get_double(kv, "omega", 1.0);

    DriveWaveform drive;
    if (kv.count("drive_harmonics")) {
        drive.harmonics = parse_harmonics(kv.at("drive_harmonics"));
        drive.omega = omega;
    } else {
        drive = DriveWaveform::single_cosine(epsilon, omega);
    }

    if (kind == "single") {
        for (const char* jkey : {"jx", "jy", "jz"})
            if (kv.count(jkey))
                throw ConfigError(std::string("config key '") + jkey +
                                  "' needs kind = pair");
        return SystemSpec::single_spin(h0, phi, drive);
    }
    if (kind == "pair") {
        Exchange j;
        j.jx = get_double(kv, "jx", 5.0);
        j.jy = get_double(kv, "jy", 5.0);
        j.jz = get_double(kv, "jz", 0.0);
        return SystemSpec::spin_pair(h0, phi, j, drive);
    }
    throw ConfigError("kind must be 'single' or 'pair', got '" + kind + "'");
}

ThermalParams build_thermal_params(const KeyValues& kv) {
    ThermalParams params;
    params.beta = get_double(kv, "beta", 10.0);
    params.nu = get_double(kv, "nu", 0.1);
    const std::string target = get_string(kv, "target", "static");
    if (target == "static")
        params.target_mode = TargetMode::StaticTarget;
    else if (target == "instantaneous")
        params.target_mode = TargetMode::InstantaneousTarget;
    else
        throw ConfigError("target must be 'static' or 'instantaneous', got '" + target + "'");
    return params;
}

SolverConfig build_solver_config(const KeyValues& kv) {
    SolverConfig solver;
    const std::string method = get_string(kv, "method", "timestep");
    if (method == "timestep")
        solver.method = SolveMethod::Timestep;
    else if (method == "hb" || method == "harmonic-balance")
        solver.method = SolveMethod::HarmonicBalance;
    else
        throw ConfigError("method must be 'timestep' or 'hb', got '" + method + "'");
    solver.options.steps_per_period = get_int(kv, "steps_per_period", 256);
    solver.options.max_dt = get_double(kv, "max_dt", 0.02);
    solver.options.tol_ss = get_double(kv, "tolerance", 1e-10);
    solver.options.max_periods = get_int(kv, "max_periods", 20000);
    solver.n_harmonics = get_int(kv, "n_harmonics", 0);
    return solver;
}

SweepConfig build_sweep_config(const KeyValues& kv) {
    check_known(kv);
    SweepConfig config;
    config.system = build_system_spec(kv);
    config.thermal = build_thermal_params(kv);
    config.solver = build_solver_config(kv);

    const std::string axis = get_string(kv, "axis", "omega");
    if (axis == "omega")
        config.axis = SweepAxis::Omega;
    else if (axis == "nu")
        config.axis = SweepAxis::Nu;
    else if (axis == "beta")
        config.axis = SweepAxis::Beta;
    else
        throw ConfigError("axis must be 'omega', 'nu' or 'beta', got '" + axis + "'");

    config.grid.start = get_double(kv, "grid_start", 0.05);
    config.grid.stop = get_double(kv, "grid_stop", 8.0);
    config.grid.points = get_int(kv, "grid_points", 200);
    const std::string spacing = get_string(kv, "grid_spacing", "log");
    if (spacing == "linear")
        config.grid.spacing = GridSpacing::Linear;
    else if (spacing == "log")
        config.grid.spacing = GridSpacing::Log;
    else
        throw ConfigError("grid_spacing must be 'linear' or 'log', got '" + spacing + "'");

    if (get_bool(kv, "grid_default_inl", false)) {
        if (config.axis != SweepAxis::Omega)
            throw ConfigError("grid_default_inl requires axis = omega");
        config.explicit_grid = default_inl_grid(config.system);
    }

    config.refine_passes = get_int(kv, "refine_passes", 0);
    config.refine_points = get_int(kv, "refine_points", 25);
    config.refine_peaks = get_int(kv, "refine_peaks", 2);
    config.output = get_string(kv, "output", "");
    config.workers = get_int(kv, "workers", 0);
    return config;
}

}  // namespace acspin
