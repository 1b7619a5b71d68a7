// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "zeno/config.hpp"
#include "zeno/dynamics.hpp"
#include "zeno/errors.hpp"
#include "zeno/performance.hpp"
#include "zeno/quasistatic.hpp"
#include "zeno/rubidium.hpp"

using namespace zeno;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string num(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

Device nominal() { return validate(load_config(ZENO_DEFAULT_CONFIG)); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path work_dir() {
    const auto p = fs::temp_directory_path() / ("zeno_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
}

// Runs the CLI and returns (exit status, stdout).
std::pair<int, std::string> cli(const std::string& args) {
    const auto log = work_dir() / "cli.log";
    const std::string cmd = std::string("\"") + ZENO_CLI_PATH + "\" " + args + " --config \"" + ZENO_DEFAULT_CONFIG +
                            "\" --out \"" + work_dir().string() + "\" > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream f(log);
    std::stringstream ss;
    ss << f.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::vector<std::pair<double, double>> read_xy(const fs::path& p) {
    std::vector<std::pair<double, double>> out;
    std::ifstream f(p);
    std::string line;
    std::getline(f, line);  // header
    while (std::getline(f, line)) {
        const auto comma = line.find(',');
        out.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    return out;
}

Outcome ac1() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto dev = nominal();
    const auto& res = dev.resonator();
    const auto flux = rubidium::effective_alpha(res, dev.vapor().R20_per_s, 0.5 * (res.lambda1_m() + res.lambda2_m()));
    const double f = performance::enhancement_factor(res.lambda1_m(), res.Q, res.n_eff, dev.L_cm() * 1e-2);
    const double rho = rubidium::density_from_temperature(dev.vapor().temperature_K());
    struct Row {
        const char* name;
        double got, want, tol;
    };
    const Row rows[] = {
        {"f", f, 30350, 0.01},
        {"dt", flux.dt_roundtrip_s, 6.81e-13, 0.005},
        {"P_f", flux.single_photon_flux_W, 3.74e-7, 0.005},
        {"L0", flux.baseline_loss_per_cm, 4.08e-2, 0.01},
        {"alpha0", flux.alpha0_cm_per_GW, 5.27e5, 0.01},
        {"A", dev.A_cm2(), 4.83e-9, 0.005},
        {"rho(43C)", rho, 5.6e10, 0.03},
        {"gamma_Q", dev.gamma_from_Q_per_cm(), 2.13e-3, 0.02},
    };
    const double elapsed = seconds_since(t0);
    bool ok = elapsed < 0.1;
    std::string worst;
    double worst_frac = 0.0;
    for (const auto& r : rows) {
        const double frac = rel(r.got, r.want) / r.tol;
        ok = ok && frac <= 1.0;
        if (frac >= worst_frac) {
            worst_frac = frac;
            worst = std::string(r.name) + " off by " + num(100 * rel(r.got, r.want)) + "% (limit " +
                    num(100 * r.tol) + "%)";
        }
    }
    return {ok, "8 rows within tolerance, tightest " + worst + ", " + num(elapsed * 1e3) + " ms"};
}

Outcome ac2() {
    VaporParams v;
    v.rho_per_cc = v.rho0_per_cc;
    v.delta_nm = v.delta0_nm;
    const auto r = rubidium::scaled_rates(v, 1.0, 1.0);
    bool ok = r.R2_per_s == 9.41e8 && r.R1_per_s == 1.12e8;
    double worst = 0.0;
    const double I1 = 1.7, I2 = 0.45;
    const double expect = I2 * v.R20_per_s / v.R10_per_s;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            auto w = v;
            w.rho_per_cc = 1e9 * std::pow(10.0, 0.6 * i);
            w.delta_nm = 0.01 * std::pow(1.75, j);
            const auto s = rubidium::scaled_rates(w, I1, I2);
            worst = std::max(worst, rel(s.R2_per_s / s.R1_per_s, expect));
        }
    ok = ok && worst <= 1e-12;
    return {ok, "R2 = " + num(r.R2_per_s) + ", R1 = " + num(r.R1_per_s) + ", worst R2/R1 deviation over 10x10 grid " +
                    num(worst)};
}

Outcome ac3() {
    const double g2 = 3.14e8;
    const double r0 = rubidium::self_tpa_ratio(0.0, 778.0, g2);
    const double r05 = rubidium::self_tpa_ratio(0.5, 778.0, g2);
    const bool order = std::floor(std::log10(r05)) == -8.0;
    const auto [code, out] = cli("fig9");
    const auto curve = read_xy(work_dir() / "fig9.csv");
    bool decreasing = code == 0 && curve.size() > 2;
    for (std::size_t i = 1; i < curve.size(); ++i) decreasing = decreasing && curve[i].second < curve[i - 1].second;
    const bool ok = r0 == 1.0 && r05 <= 1e-7 && order && decreasing;
    return {ok, "ratio(0) = " + num(r0) + ", ratio(0.5 nm) = " + num(r05) + ", fig9 CSV " +
                    std::to_string(curve.size()) + " points " + (decreasing ? "strictly decreasing" : "NOT decreasing")};
}

Outcome ac4() {
    const auto [c11, o11] = cli("fig11");
    const auto [c10, o10] = cli("fig10");
    double T = NAN, rho = NAN;
    for (const auto& [x, y] : read_xy(work_dir() / "fig11.csv"))
        if (x == 0.05) T = y;
    for (const auto& [x, y] : read_xy(work_dir() / "fig10.csv"))
        if (x == 0.05) rho = std::pow(10.0, y);
    double worst = 0.0;
    for (double K = 260.0; K <= 490.0; K += 5.0)
        worst = std::max(worst, std::abs(rubidium::temperature_for_density(rubidium::density_from_temperature(K)) - K));
    const bool ok = c11 == 0 && c10 == 0 && std::abs(T - 43.0) <= 2.0 && rel(rho, 5.6e10) <= 0.03 && worst <= 1e-4;
    return {ok, "fig11(0.05 nm) = " + num(T) + " C, fig10(0.05 nm) = " + num(rho) + " cm^-3, worst round trip " +
                    num(worst) + " K"};
}

Outcome ac5() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto dev = nominal();
    const double P = 3.7e-4;
    const auto sym = find_symmetric_solution(P, dev);
    const auto lo = solve_fixed_point({P, P}, dev, 0.9 * sym.I1R_W);
    const auto hi = solve_fixed_point({P, P}, dev, 1.1 * sym.I1R_W);
    const double elapsed = seconds_since(t0);
    const bool ok = lo.branch == Branch::field1_dominant && hi.branch == Branch::field2_dominant &&
                    rel(lo.I1R_W, hi.I2R_W) < 1e-8 && !sym.stable && sym.spectral_radius > 1.0 &&
                    lo.spectral_radius < 1.0 && hi.spectral_radius < 1.0 && elapsed < 1.0;
    return {ok, "I* = " + num(sym.I1R_W) + " W (rho " + num(sym.spectral_radius) + "), seeds 0.9/1.1 I* -> " +
                    std::string(to_string(lo.branch)) + " (rho " + num(lo.spectral_radius) + ") / " +
                    std::string(to_string(hi.branch)) + " (rho " + num(hi.spectral_radius) + "), " +
                    num(elapsed * 1e3) + " ms"};
}

Outcome ac6() {
    std::mt19937_64 gen(7);
    const auto u = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); };
    const auto lu = [&](double a, double b) { return std::exp(u(std::log(a), std::log(b))); };
    double worst = 0.0;
    int n_f1 = 0, n_f2 = 0;
    for (int trial = 0; trial < 20; ++trial) {
        auto cfg = load_config(ZENO_DEFAULT_CONFIG);
        cfg.resonator.coupling_R = u(0.07, 0.12);
        cfg.loss.alpha_cm_per_GW *= lu(0.5, 2.0);
        cfg.loss.gamma_per_cm *= lu(0.5, 2.0);
        const auto dev = validate(cfg);
        const InputPowers in{3.7e-4 * lu(0.3, 3.0), 3.7e-4 * lu(0.3, 3.0)};
        const bool field1_first = trial % 2 == 0;
        const double lag = u(0.2e-9, 1e-9);
        const DriveSignal drive{DriveChannel::constant(in.P1_W, field1_first ? 0.0 : lag),
                                DriveChannel::constant(in.P2_W, field1_first ? lag : 0.0)};
        const auto ts = simulate(drive, 20e-9, dev);
        const auto s = solve_fixed_point(in, dev, field1_first ? 0.0 : 1.0);
        (s.branch == Branch::field1_dominant ? n_f1 : n_f2)++;
        worst = std::max({worst, rel(ts.I1R_W.back(), s.I1R_W), rel(ts.I2R_W.back(), s.I2R_W)});
    }
    return {worst < 1e-6, "20 random points (" + std::to_string(n_f1) + " field-1, " + std::to_string(n_f2) +
                              " field-2 dominant), worst relative mismatch " + num(worst)};
}

Outcome ac7() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto dev = nominal();
    const DriveSignal drive{DriveChannel::pulse(3e-3, 2e-9, 4e-9), DriveChannel::constant(25e-6)};
    const auto ts = simulate(drive, 6e-9, dev);
    const auto sw = switching_times(ts, 2e-9, 4e-9);
    const double elapsed = seconds_since(t0);
    const bool ok = sw.on_latency_s <= 2 * 300e-12 && sw.off_latency_s <= 2 * 500e-12;
    const auto band = [](double got, double nominal_s) {
        return got <= nominal_s ? std::string("within nominal") : std::string("inside x2 band");
    };
    return {ok, "on " + num(sw.on_latency_s * 1e12) + " ps (" + band(sw.on_latency_s, 300e-12) + "), off " +
                    num(sw.off_latency_s * 1e12) + " ps (" + band(sw.off_latency_s, 500e-12) + "), " +
                    std::to_string(ts.size()) + " steps in " + num(elapsed) + " s"};
}

Outcome ac8() {
    const auto dev = nominal();
    const double P = 3.7e-4;
    const auto q = performance::switch_quality(dev, P, P);
    bool passive = q.control_off.out_2A_W + q.control_off.out_2B_W <= P + 1e-12 &&
                   q.control_on.out_1A_W + q.control_on.out_1B_W <= P + 1e-12 &&
                   q.control_on.out_2A_W + q.control_on.out_2B_W <= P + 1e-12;

    // Time-domain runs of both logic states and the two switching scenarios.
    const std::vector<DriveSignal> runs{
        {{}, DriveChannel::constant(P)},
        {DriveChannel::constant(P), DriveChannel::constant(P, 0.5e-9)},
        {DriveChannel::pulse(3e-3, 2e-9, 4e-9), DriveChannel::constant(25e-6)},
        {DriveChannel::pulse(25e-6, 0.5e-9, 3.5e-9), DriveChannel::pulse(25e-6, 1.5e-9, 6e-9)},
    };
    double worst = -INFINITY;
    for (const auto& d : runs) {
        const auto ts = simulate(d, 6e-9, dev);
        double in = 0.0;
        for (std::size_t k = 0; k < ts.size(); ++k) in += (ts.in_1_W[k] + ts.in_2_W[k]) * ts.dt;
        const double excess = max_passivity_excess_J(ts) / in;
        worst = std::max(worst, excess);
    }
    passive = passive && worst <= 1e-12;
    return {q.crosstalk < 0.01 && passive, "P = " + num(P) + " W: crosstalk " + num(100 * q.crosstalk) +
                                               "%, insertion loss " + num(100 * q.insertion_loss) +
                                               "%, worst prefix energy excess " + num(worst) + " of input"};
}

Outcome ac9() {
    const auto [code, out] = cli("perf");
    std::map<std::string, double> kv;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);) {
        const auto eq = line.find(" = ");
        if (eq == std::string::npos) continue;
        try {
            kv[line.substr(0, eq)] = std::stod(line.substr(eq + 3));
        } catch (const std::exception&) {
        }
    }
    const bool shown = kv.count("balance_power_W") && kv.count("balance_power_quoted_W") &&
                       kv.count("quoted_over_computed");
    if (code != 0 || !shown) return {false, "perf output lacks the balance power lines (exit " + std::to_string(code) + ")"};
    const double Pc = kv["balance_power_W"];
    const auto dev = nominal();
    const auto& res = dev.resonator();
    const double f = performance::enhancement_factor(res.lambda1_m(), res.Q, res.n_eff, dev.L_cm() * 1e-2);
    const double residual =
        performance::balance_residual(Pc, dev.gamma_per_cm(), dev.A_cm2(), dev.loss().alpha_cm_per_GW, f);
    const bool ok = kv["balance_power_quoted_W"] == 3.7e-7 && rel(kv["quoted_over_computed"], 3.7e-7 / Pc) < 1e-12 &&
                    residual <= 1e-9;
    return {ok, "computed P_c = " + num(Pc) + " W, quoted 3.7e-07 W, ratio " + num(kv["quoted_over_computed"]) +
                    ", balance residual " + num(residual)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1 Table-1 regression", ac1},
        {"AC2 baseline rates", ac2},
        {"AC3 self-TPA suppression", ac3},
        {"AC4 design curves", ac4},
        {"AC5 bistability", ac5},
        {"AC6 quasistatic/dynamic equivalence", ac6},
        {"AC7 switching dynamics", ac7},
        {"AC8 switch quality", ac8},
        {"AC9 discrepancy reporting", ac9},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
        failed += o.pass ? 0 : 1;
    }
    fs::remove_all(work_dir());
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
