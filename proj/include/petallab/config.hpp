#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "petallab/experiments.hpp"

namespace petallab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses the structured key/value config syntax (tables, inline tables,
/// arrays, strings, numbers, booleans) into a JSON document. Strict: unknown
/// syntax or duplicate keys raise ConfigError.
nlohmann::json parse_config_text(const std::string& text);

struct RunConfig {
    SweepConfig sweep;
    std::string out_dir = "report";
    std::vector<std::string> formats{"csv", "json", "svg"};
    bool seed_from_config = false;
};

/// Builds a run configuration from config text. Unknown keys are rejected;
/// numeric fields pass through the module constructors, so their
/// preconditions hold at parse time. When the config carries no seed, the
/// PETALLAB_SEED environment variable applies, then the default.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

/// Normalized config emission; parse_run_config(emit_config(c)) reproduces c.
std::string emit_config(const RunConfig& cfg);

}  // namespace petallab
