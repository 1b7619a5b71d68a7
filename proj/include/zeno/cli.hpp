#pragma once

// Command dispatch for the zeno_switch front end. Argument parsing lives in
// the executable; this layer takes a parsed RunSpec so it can be driven from
// tests directly.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "zeno/config.hpp"

namespace zeno::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitSolver = 2;
inline constexpr int kExitIo = 3;

const std::vector<std::string>& commands();

struct GridSpec {
    std::string key;
    double start = 0;
    double stop = 0;
    int steps = 1;
    bool log = false;

    std::vector<double> values() const;
};

// "KEY=start:stop:steps[:log]". Throws ConfigError on malformed input.
GridSpec parse_grid(std::string_view text);

struct RunSpec {
    std::string command;
    std::filesystem::path config_path;  // empty: built-in defaults
    std::filesystem::path out_dir = "out";
    bool plot = false;
    bool gamma_from_Q = false;
    std::vector<std::string> overrides;
    std::vector<GridSpec> grids;
    unsigned threads = 0;  // 0: hardware concurrency
};

// Runs one command. Human-readable results go to `out`, diagnostics to `err`.
// Returns 0 on success, 1 for config/validation errors, 2 for solver
// failures and 3 for I/O errors.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

}  // namespace zeno::cli
