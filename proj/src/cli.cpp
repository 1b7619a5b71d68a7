#include "zeno/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "zeno/dynamics.hpp"
#include "zeno/errors.hpp"
#include "zeno/performance.hpp"
#include "zeno/quasistatic.hpp"
#include "zeno/report.hpp"
#include "zeno/rubidium.hpp"

namespace zeno::cli {
namespace fs = std::filesystem;
using report::Cell;
using report::Table;

const std::vector<std::string>& commands() {
    static const std::vector<std::string> names{"fig3",  "fig4",   "fig5",  "fig6",     "fig7",  "fig9", "fig10",
                                                "fig11", "table1", "solve", "simulate", "sweep", "perf"};
    return names;
}

std::vector<double> GridSpec::values() const {
    std::vector<double> v;
    if (steps == 1) return {start};
    for (int i = 0; i < steps; ++i) {
        const double u = static_cast<double>(i) / (steps - 1);
        v.push_back(log ? start * std::pow(stop / start, u) : start + (stop - start) * u);
    }
    v.back() = stop;
    return v;
}

GridSpec parse_grid(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ConfigError("", "grid must look like KEY=start:stop:steps[:log]");
    GridSpec g;
    g.key = std::string(text.substr(0, eq));
    std::vector<std::string> parts;
    std::string rest(text.substr(eq + 1));
    std::stringstream ss(rest);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3 && !(parts.size() == 4 && parts[3] == "log"))
        throw ConfigError(g.key, "grid for '" + g.key + "' must be start:stop:steps[:log]");
    g.start = parse_double(parts[0], g.key);
    g.stop = parse_double(parts[1], g.key);
    const double steps = parse_double(parts[2], g.key);
    if (!(steps >= 1) || steps != std::floor(steps) || steps > 1e6)
        throw ConfigError(g.key, "grid step count for '" + g.key + "' must be a positive integer");
    g.steps = static_cast<int>(steps);
    g.log = parts.size() == 4;
    if (g.log && !(g.start > 0 && g.stop > 0))
        throw ConfigError(g.key, "log grid for '" + g.key + "' needs positive bounds");
    return g;
}

namespace {

struct Context {
    const RunSpec& spec;
    Config config;
    std::ostream& out;
};

std::string fmt(double x) { return format_double(x); }

void ensure_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

void emit(const Context& ctx, const std::string& stem, const Table& t, const report::PlotSpec& plot,
          const std::vector<report::Series>& series) {
    const auto csv = ctx.spec.out_dir / (stem + ".csv");
    report::write_csv(csv, t);
    ctx.out << "wrote " << csv.string() << '\n';
    if (ctx.spec.plot) {
        const auto svg = ctx.spec.out_dir / (stem + ".svg");
        report::write_svg(svg, plot, series);
        ctx.out << "wrote " << svg.string() << '\n';
    }
}

std::vector<report::Series> timeseries_plot_series(const TimeSeries& ts) {
    std::vector<double> t_ns(ts.time_s.size());
    std::transform(ts.time_s.begin(), ts.time_s.end(), t_ns.begin(), [](double t) { return t * 1e9; });
    return {{"out_1A", t_ns, ts.out_1A_W},
            {"out_1B", t_ns, ts.out_1B_W},
            {"out_2A (reflected)", t_ns, ts.out_2A_W},
            {"out_2B (transmitted)", t_ns, ts.out_2B_W}};
}

// Assumed-intensity grid for the response curves: 0, then log-spaced up to
// 1.2x the larger linear resonance value.
std::vector<double> assumed_grid(const Device& dev, const InputPowers& in) {
    const auto& res = dev.resonator();
    const double f1 = std::norm(intracavity_response(std::sqrt(in.P1_W), 0.0, res.phi1_rad, dev));
    const double f2 = std::norm(intracavity_response(std::sqrt(in.P2_W), 0.0, res.phi2_rad, dev));
    const double top = 1.2 * std::max({f1, f2, 1e-12});
    std::vector<double> g{0.0};
    constexpr int n = 500;
    for (int i = 0; i < n; ++i) g.push_back(top * std::pow(1e-6, 1.0 - static_cast<double>(i) / (n - 1)));
    return g;
}

Table curve_table(const std::vector<CurvePoint>& c) {
    std::vector<double> a, r;
    for (const auto& p : c) {
        a.push_back(p.assumed_W);
        r.push_back(p.responding_W);
    }
    return Table::from_columns({"assumed_intensity_W", "responding_intensity_W"}, {a, r});
}

InputPowers configured_inputs(const Config& c) { return {c.input.P1_W, c.input.P2_W}; }

int cmd_response(const Context& ctx, int which) {
    const Device dev = validate(ctx.config);
    const auto in = configured_inputs(ctx.config);
    const auto& res = dev.resonator();
    const auto grid = assumed_grid(dev, in);
    // Field 2 responding to an assumed I1R, and field 1 responding to an assumed I2R.
    const auto c2 = response_curve(grid, in.P2_W, res.phi2_rad, dev);
    const auto c1 = response_curve(grid, in.P1_W, res.phi1_rad, dev);

    const auto series_of = [](const std::vector<CurvePoint>& c, bool swap, const std::string& name) {
        report::Series s{name, {}, {}};
        for (const auto& p : c) {
            s.x.push_back(swap ? p.responding_W : p.assumed_W);
            s.y.push_back(swap ? p.assumed_W : p.responding_W);
        }
        return s;
    };

    if (which == 3) {
        emit(ctx, "fig3", curve_table(c2), {"I2R versus assumed I1R", "assumed I1R (W)", "I2R (W)", true, true},
             {series_of(c2, false, "I2R")});
    } else if (which == 4) {
        emit(ctx, "fig4", curve_table(c1), {"I1R versus assumed I2R", "assumed I2R (W)", "I1R (W)", true, true},
             {series_of(c1, false, "I1R")});
    } else {
        const report::PlotSpec plot{"Self-consistent intersections", "I1R (W)", "I2R (W)", true, true};
        const std::vector<report::Series> both{series_of(c2, false, "I2R(I1R)"), series_of(c1, true, "I1R(I2R)")};
        emit(ctx, "fig5_field2", curve_table(c2), plot, both);
        const auto csv = ctx.spec.out_dir / "fig5_field1.csv";
        report::write_csv(csv, curve_table(c1));
        ctx.out << "wrote " << csv.string() << '\n';
        if (in.P1_W == in.P2_W && res.phi1_rad == res.phi2_rad) {
            const auto sym = find_symmetric_solution(in.P1_W, dev);
            ctx.out << "symmetric_point_W = " << fmt(sym.I1R_W) << '\n'
                    << "symmetric_stable = " << (sym.stable ? "true" : "false") << '\n'
                    << "symmetric_spectral_radius = " << fmt(sym.spectral_radius) << '\n';
        }
    }
    return kExitOk;
}

void print_latencies(const Context& ctx, const TimeSeries& ts, double on_s, double off_s) {
    const auto sw = switching_times(ts, on_s, off_s);
    ctx.out << "on_latency_s = " << fmt(sw.on_latency_s) << '\n' << "off_latency_s = " << fmt(sw.off_latency_s) << '\n';
}

int cmd_fig6(const Context& ctx) {
    const Device dev = validate(ctx.config);
    const double rise = ctx.config.sim.rise_time_ps * 1e-12;
    const double on = 2e-9, off = 4e-9;
    DriveSignal drive{DriveChannel::pulse(3e-3, on, off, rise), DriveChannel::constant(25e-6, 0.0, rise)};
    const auto ts = simulate(drive, 6e-9, dev);
    emit(ctx, "fig6", report::timeseries_table(ts),
         {"3 mW control switching a 25 uW target", "time (ns)", "power (W)", false, false},
         timeseries_plot_series(ts));
    print_latencies(ctx, ts, on, off);
    return kExitOk;
}

int cmd_fig7(const Context& ctx) {
    const Device dev = validate(ctx.config);
    const double rise = ctx.config.sim.rise_time_ps * 1e-12;
    const double on = 0.5e-9, off = 3.5e-9;
    DriveSignal drive{DriveChannel::pulse(25e-6, on, off, rise), DriveChannel::pulse(25e-6, 1.5e-9, 6e-9, rise)};
    const auto ts = simulate(drive, 6e-9, dev);
    emit(ctx, "fig7", report::timeseries_table(ts),
         {"25 uW control switching a 25 uW target pulse", "time (ns)", "power (W)", false, false},
         timeseries_plot_series(ts));
    print_latencies(ctx, ts, on, off);
    return kExitOk;
}

Table design_table(const std::string& x, const std::string& y, const std::vector<rubidium::DesignPoint>& pts) {
    std::vector<double> a, b;
    for (const auto& p : pts) {
        a.push_back(p.x);
        b.push_back(p.y);
    }
    return Table::from_columns({x, y}, {a, b});
}

report::Series design_series(const std::string& name, const std::vector<rubidium::DesignPoint>& pts) {
    report::Series s{name, {}, {}};
    for (const auto& p : pts) {
        s.x.push_back(p.x);
        s.y.push_back(p.y);
    }
    return s;
}

int cmd_fig9(const Context& ctx) {
    const auto& res = ctx.config.resonator;
    const double center = 0.5 * (res.lambda1_nm + res.lambda2_nm);
    const auto pts = rubidium::self_tpa_curve(4.0, 401, center, ctx.config.vapor.gamma2_per_s);
    emit(ctx, "fig9", design_table("delta_lambda_nm", "log10_ratio", pts),
         {"Self-TPA suppression", "wavelength difference (nm)", "log10 Rs/R2", false, false},
         {design_series("log10 Rs/R2", pts)});
    return kExitOk;
}

int cmd_fig10(const Context& ctx) {
    const auto pts = rubidium::density_curve(ctx.config.vapor, rubidium::detuning_grid(212));
    emit(ctx, "fig10", design_table("detuning_nm", "log10_density_per_cc", pts),
         {"Required vapor density", "detuning (nm)", "log10 density (cm^-3)", false, false},
         {design_series("log10 density", pts)});
    return kExitOk;
}

int cmd_fig11(const Context& ctx) {
    const auto pts = rubidium::temperature_curve(ctx.config.vapor, rubidium::detuning_grid(212));
    emit(ctx, "fig11", design_table("detuning_nm", "temperature_C", pts),
         {"Required vapor temperature", "detuning (nm)", "temperature (C)", false, false},
         {design_series("temperature", pts)});
    return kExitOk;
}

struct Table1Row {
    std::string quantity;
    std::string unit;
    double computed;
    double reference;
    double tolerance;  // relative
};

std::vector<Table1Row> table1_rows(const Config& cfg) {
    const Device dev = validate(cfg);
    const auto& res = dev.resonator();
    const auto& vap = dev.vapor();
    const double center_m = 0.5 * (res.lambda1_m() + res.lambda2_m());
    const auto flux = rubidium::effective_alpha(res, vap.R20_per_s, center_m);
    const double f = performance::enhancement_factor(res.lambda1_m(), res.Q, res.n_eff, dev.L_cm() * 1e-2);
    const double T_req = rubidium::temperature_for_density(rubidium::required_density(vap, vap.delta_nm)) - 273.15;
    return {
        {"effective_mode_area", "cm^2", dev.A_cm2(), 4.83e-9, 0.005},
        {"power_enhancement_factor", "1", f, 30350, 0.01},
        {"round_trip_time", "s", flux.dt_roundtrip_s, 6.81e-13, 0.005},
        {"single_photon_flux_power", "W", flux.single_photon_flux_W, 3.74e-7, 0.005},
        {"baseline_tpa_loss", "cm^-1", flux.baseline_loss_per_cm, 4.08e-2, 0.01},
        {"effective_tpa_coefficient", "cm/GW", flux.alpha0_cm_per_GW, 5.27e5, 0.01},
        {"vapor_density_at_temperature", "cm^-3", rubidium::density_from_temperature(vap.temperature_K()), 5.6e10,
         0.03},
        {"temperature_for_detuning", "C", T_req, 43.0, 2.0 / 43.0},
        {"single_photon_loss_from_Q", "cm^-1", dev.gamma_from_Q_per_cm(), 2.13e-3, 0.02},
    };
}

int cmd_table1(const Context& ctx) {
    const auto rows = table1_rows(ctx.config);
    Table t;
    t.header = {"quantity", "unit", "computed", "reference", "relative_deviation", "tolerance", "status"};
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.quantity.size());
    for (const auto& r : rows) {
        const double dev = (r.computed - r.reference) / r.reference;
        const bool ok = std::abs(dev) <= r.tolerance;
        t.rows.push_back({r.quantity, r.unit, r.computed, r.reference, dev, r.tolerance, std::string(ok ? "ok" : "off")});
        ctx.out << r.quantity << std::string(width + 2 - r.quantity.size(), ' ') << fmt(r.computed) << "  (reference "
                << fmt(r.reference) << ", deviation " << fmt(dev) << ", " << (ok ? "ok" : "OUTSIDE TOLERANCE") << ")\n";
    }
    const auto csv = ctx.spec.out_dir / "table1.csv";
    report::write_csv(csv, t);
    ctx.out << "wrote " << csv.string() << '\n';
    return kExitOk;
}

std::vector<Cell> solution_cells(const SteadySolution& s) {
    return {s.I1R_W,
            s.I2R_W,
            std::string(to_string(s.branch)),
            std::string(s.stable ? "true" : "false"),
            s.spectral_radius,
            static_cast<double>(s.iterations),
            s.outputs.out_1A_W,
            s.outputs.out_1B_W,
            s.outputs.out_2A_W,
            s.outputs.out_2B_W};
}

const std::vector<std::string> kSolutionHeader{"I1R_W",          "I2R_W",     "branch",   "stable",
                                               "spectral_radius", "iterations", "out_1A_W", "out_1B_W",
                                               "out_2A_W",        "out_2B_W"};

int cmd_solve(const Context& ctx) {
    const Device dev = validate(ctx.config);
    const auto sol = solve_fixed_point(configured_inputs(ctx.config), dev, ctx.config.input.seed_W);
    Table t;
    t.header = kSolutionHeader;
    t.rows.push_back(solution_cells(sol));
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        const auto& c = t.rows[0][i];
        ctx.out << t.header[i] << " = "
                << (std::holds_alternative<double>(c) ? fmt(std::get<double>(c)) : std::get<std::string>(c)) << '\n';
    }
    const auto csv = ctx.spec.out_dir / "solve.csv";
    report::write_csv(csv, t);
    ctx.out << "wrote " << csv.string() << '\n';
    return kExitOk;
}

int cmd_simulate(const Context& ctx) {
    const Device dev = validate(ctx.config);
    const auto& in = ctx.config.input;
    const double rise = ctx.config.sim.rise_time_ps * 1e-12;
    DriveSignal drive{DriveChannel::constant(in.P1_W, in.P1_start_ns * 1e-9, rise),
                      DriveChannel::constant(in.P2_W, in.P2_start_ns * 1e-9, rise)};
    const auto ts = simulate(drive, ctx.config.sim.duration_ns * 1e-9, dev);
    emit(ctx, "simulate", report::timeseries_table(ts), {"Constant drive", "time (ns)", "power (W)", false, false},
         timeseries_plot_series(ts));
    const std::size_t k = ts.size() - 1;
    const int bit = bit_state(ts.I1R_W[k], ts.I2R_W[k]);
    ctx.out << "final_I1R_W = " << fmt(ts.I1R_W[k]) << '\n'
            << "final_I2R_W = " << fmt(ts.I2R_W[k]) << '\n'
            << "final_bit = " << (bit < 0 ? std::string("indeterminate") : std::to_string(bit)) << '\n'
            << "passivity_excess_J = " << fmt(max_passivity_excess_J(ts)) << '\n';
    return kExitOk;
}

int cmd_sweep(const Context& ctx) {
    if (ctx.spec.grids.empty()) throw ConfigError("", "sweep needs at least one --grid");
    std::vector<std::vector<double>> axes;
    for (const auto& g : ctx.spec.grids) {
        Config probe = ctx.config;
        set_value(probe, g.key, get_value(probe, g.key));  // rejects unknown keys early
        axes.push_back(g.values());
    }

    // Cartesian product, first grid varying slowest.
    std::vector<std::vector<double>> points{{}};
    for (const auto& axis : axes) {
        std::vector<std::vector<double>> next;
        for (const auto& p : points)
            for (double v : axis) {
                next.push_back(p);
                next.back().push_back(v);
            }
        points = std::move(next);
    }

    std::vector<Device> devices;
    devices.reserve(points.size());
    for (const auto& p : points) {
        Config c = ctx.config;
        for (std::size_t i = 0; i < p.size(); ++i) set_value(c, ctx.spec.grids[i].key, p[i]);
        devices.push_back(validate(c));
    }

    std::vector<std::vector<Cell>> rows(points.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            std::vector<Cell> row(points[i].begin(), points[i].end());
            const auto& c = devices[i].config();
            std::vector<Cell> sol;
            std::string status = "ok";
            try {
                sol = solution_cells(solve_fixed_point({c.input.P1_W, c.input.P2_W}, devices[i], c.input.seed_W));
            } catch (const SolverError& e) {
                status = std::string("solver error: ") + e.what();
                sol.assign(kSolutionHeader.size(), Cell{std::string()});
            }
            row.insert(row.end(), sol.begin(), sol.end());
            row.emplace_back(status);
            rows[i] = std::move(row);
        }
    };
    unsigned n_threads = ctx.spec.threads ? ctx.spec.threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, points.size()));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    Table t;
    for (const auto& g : ctx.spec.grids) t.header.push_back(g.key);
    t.header.insert(t.header.end(), kSolutionHeader.begin(), kSolutionHeader.end());
    t.header.push_back("status");
    t.rows = std::move(rows);
    const auto csv = ctx.spec.out_dir / "sweep.csv";
    report::write_csv(csv, t);
    ctx.out << "points = " << points.size() << '\n' << "wrote " << csv.string() << '\n';
    return kExitOk;
}

int cmd_perf(const Context& ctx) {
    const Device dev = validate(ctx.config);
    const auto r = performance::perf_report(dev, ctx.spec.gamma_from_Q, ctx.config.input.P1_W);
    ctx.out << performance::format_report(r);
    Table t;
    t.header = {"enhancement_factor", "gamma_from_Q_per_cm", "gamma_used_per_cm", "critical_coupling_R",
                "balance_power_W",    "balance_power_quoted_W", "quoted_over_computed", "balance_residual",
                "operating_power_W",  "crosstalk",           "insertion_loss"};
    t.rows.push_back({r.f, r.gamma_Q_per_cm, r.gamma_used_per_cm, r.R_crit, r.P_c_W, r.P_c_quoted_W, r.P_c_ratio,
                      r.balance_residual, r.operating_power_W, r.crosstalk, r.insertion_loss});
    const auto csv = ctx.spec.out_dir / "perf.csv";
    report::write_csv(csv, t);
    ctx.out << "wrote " << csv.string() << '\n';
    return kExitOk;
}

int dispatch(const Context& ctx) {
    static const std::map<std::string, std::function<int(const Context&)>> table{
        {"fig3", [](const Context& c) { return cmd_response(c, 3); }},
        {"fig4", [](const Context& c) { return cmd_response(c, 4); }},
        {"fig5", [](const Context& c) { return cmd_response(c, 5); }},
        {"fig6", cmd_fig6},
        {"fig7", cmd_fig7},
        {"fig9", cmd_fig9},
        {"fig10", cmd_fig10},
        {"fig11", cmd_fig11},
        {"table1", cmd_table1},
        {"solve", cmd_solve},
        {"simulate", cmd_simulate},
        {"sweep", cmd_sweep},
        {"perf", cmd_perf},
    };
    return table.at(ctx.spec.command)(ctx);
}

}  // namespace

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    try {
        if (std::find(commands().begin(), commands().end(), spec.command) == commands().end())
            throw ConfigError("", "unknown command '" + spec.command + "'");
        Config cfg = spec.config_path.empty() ? default_config() : load_config(spec.config_path);
        for (const auto& o : spec.overrides) apply_override(cfg, o);
        ensure_out_dir(spec.out_dir);
        return dispatch(Context{spec, std::move(cfg), out});
    } catch (const ConfigError& e) {
        err << "config error";
        if (!e.key().empty()) err << " [" << e.key() << "]";
        err << ": " << e.what() << '\n';
        return kExitConfig;
    } catch (const DivergenceError& e) {
        err << "solver error: " << e.what() << '\n';
        for (const auto& [a, b] : e.trajectory_tail()) err << "  I1R=" << fmt(a) << " I2R=" << fmt(b) << '\n';
        return kExitSolver;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::logic_error& e) {
        // Domain errors from the physics layer (out-of-range temperature,
        // empty run, bad drive) trace back to the chosen parameters.
        err << "parameter error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace zeno::cli
