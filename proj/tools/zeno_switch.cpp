// zeno_switch: reproduce figures and tables, solve and simulate the
// Zeno-effect resonator switch from the command line.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zeno/cli.hpp"
#include "zeno/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Zeno-effect all-optical switch simulator"};
    app.require_subcommand(1, 1);

    zeno::cli::RunSpec spec;
    std::string config;
    std::string out_dir = "out";
    std::vector<std::string> overrides;
    std::vector<std::string> grids;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config, "Config file (default: built-in nominal parameters)");
        sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
        sub->add_flag("--plot", spec.plot, "Also write SVG plots");
        sub->add_option("--override", overrides, "KEY=VALUE, repeatable")->expected(1, -1);
    };

    const std::vector<std::pair<std::string, std::string>> descriptions{
        {"fig3", "field-2 response to an assumed field-1 intensity"},
        {"fig4", "field-1 response to an assumed field-2 intensity"},
        {"fig5", "both response curves and their symmetric intersection"},
        {"fig6", "3 mW control pulse switching a 25 uW target"},
        {"fig7", "25 uW control switching a 25 uW target pulse"},
        {"fig9", "self-TPA suppression versus wavelength difference"},
        {"fig10", "required vapor density versus detuning"},
        {"fig11", "required vapor temperature versus detuning"},
        {"table1", "derived quantities next to the nominal parameter table"},
        {"solve", "steady state for the configured inputs"},
        {"simulate", "time-domain run with constant configured inputs"},
        {"sweep", "steady states over a parameter grid"},
        {"perf", "closed-form performance figures and switch quality"},
    };
    for (const auto& [name, help] : descriptions) {
        auto* sub = app.add_subcommand(name, help);
        add_common(sub);
        if (name == "sweep") {
            sub->add_option("--grid", grids, "KEY=start:stop:steps[:log], repeatable")->required()->expected(1, -1);
            sub->add_option("--threads", spec.threads, "Worker threads (0: all cores)");
        }
        if (name == "perf") sub->add_flag("--gamma-from-q", spec.gamma_from_Q, "Use the Q-derived loss rate");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help and version requests exit 0; every usage error maps to the config exit code.
        const int rc = app.exit(e);
        return rc == 0 ? 0 : zeno::cli::kExitConfig;
    }

    spec.command = app.get_subcommands().front()->get_name();
    spec.config_path = config;
    spec.out_dir = out_dir;
    spec.overrides = overrides;
    try {
        for (const auto& g : grids) spec.grids.push_back(zeno::cli::parse_grid(g));
    } catch (const zeno::ConfigError& e) {
        std::cerr << "config error [" << e.key() << "]: " << e.what() << '\n';
        return zeno::cli::kExitConfig;
    }
    return zeno::cli::run(spec, std::cout, std::cerr);
}
