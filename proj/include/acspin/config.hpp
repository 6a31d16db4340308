#pragma once

#include <map>
#include <string>

#include "acspin/sweep.hpp"

namespace acspin {

// Flat key-value configuration. Files hold one `key = value` pair per line,
// '#' starts a comment; every key can also be given (and overridden) on the
// command line. Unknown keys are an error.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_config_text(const std::string& text);
KeyValues load_config_file(const std::string& path);

// Later maps override earlier ones.
KeyValues merge(const KeyValues& base, const KeyValues& overrides);

// Build the sweep configuration from keys (see README for the key list).
// Throws ConfigError on unknown keys or invalid values.
SweepConfig build_sweep_config(const KeyValues& kv);

// Shared pieces, reused by the non-sweep subcommands.
SystemSpec build_system_spec(const KeyValues& kv);
ThermalParams build_thermal_params(const KeyValues& kv);
SolverConfig build_solver_config(const KeyValues& kv);

}  // namespace acspin
