#pragma once

// Plain-text key/value configuration.
//
//   # comment
//   resonator.Q = 5e7
//   vapor.detuning_nm = 0.05
//
// Keys are fixed (see config_keys()); unknown keys are errors. Keys not
// present keep their default value. Values are written in shortest
// round-trip form, so write -> parse is bit-exact.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "zeno/model.hpp"

namespace zeno {

struct ConfigKey {
    std::string name;
    std::string unit;
    std::string description;
    bool optional = false;  // written only when set (> 0)
};

const std::vector<ConfigKey>& config_keys();

Config default_config();

// Parses `text` on top of the defaults. Throws ConfigError with the offending key.
Config parse_config(std::string_view text);
Config load_config(const std::filesystem::path& path);
std::string write_config(const Config& config);

double get_value(const Config& config, std::string_view key);
void set_value(Config& config, std::string_view key, double value);
// "key=value"; throws ConfigError for unknown keys or bad numbers.
void apply_override(Config& config, std::string_view assignment);

// Shortest decimal text that parses back to the same double.
std::string format_double(double x);
// Strict full-string double parse; throws ConfigError(key) on failure.
double parse_double(std::string_view text, std::string_view key);

}  // namespace zeno
