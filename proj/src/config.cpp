#include "zeno/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "zeno/errors.hpp"

namespace zeno {
namespace {

struct Binding {
    ConfigKey key;
    std::function<double&(Config&)> field;
};

const std::vector<Binding>& bindings() {
    static const std::vector<Binding> table = {
        {{"resonator.Q", "", "resonator quality factor Q"}, [](Config& c) -> double& { return c.resonator.Q; }},
        {{"resonator.major_diameter_um", "um", "major diameter of toroid D"},
         [](Config& c) -> double& { return c.resonator.major_diameter_um; }},
        {{"resonator.minor_diameter_um", "um", "minor diameter of toroid d"},
         [](Config& c) -> double& { return c.resonator.minor_diameter_um; }},
        {{"resonator.effective_mode_area_cm2", "cm^2", "effective mode area A (derived from V when absent)", true},
         [](Config& c) -> double& { return c.resonator.mode_area_cm2; }},
        {{"resonator.mode_volume_cm3", "cm^3", "mode volume V"},
         [](Config& c) -> double& { return c.resonator.mode_volume_cm3; }},
        {{"resonator.effective_index", "", "effective index of refraction n_e"},
         [](Config& c) -> double& { return c.resonator.n_eff; }},
        {{"resonator.wavelength1_nm", "nm", "wavelength 1"}, [](Config& c) -> double& { return c.resonator.lambda1_nm; }},
        {{"resonator.wavelength2_nm", "nm", "wavelength 2"}, [](Config& c) -> double& { return c.resonator.lambda2_nm; }},
        {{"resonator.coupling_R", "", "amplitude coupling coefficient R"},
         [](Config& c) -> double& { return c.resonator.coupling_R; }},
        {{"resonator.transmission_T", "", "amplitude transmission T (sqrt(1-R^2) when absent)", true},
         [](Config& c) -> double& { return c.resonator.transmission_T; }},
        {{"resonator.phase1_rad", "rad", "round-trip detuning phase of field 1"},
         [](Config& c) -> double& { return c.resonator.phi1_rad; }},
        {{"resonator.phase2_rad", "rad", "round-trip detuning phase of field 2"},
         [](Config& c) -> double& { return c.resonator.phi2_rad; }},
        {{"vapor.density_per_cc", "cm^-3", "density of rubidium vapor"},
         [](Config& c) -> double& { return c.vapor.rho_per_cc; }},
        {{"vapor.baseline_density_per_cc", "cm^-3", "baseline density"},
         [](Config& c) -> double& { return c.vapor.rho0_per_cc; }},
        {{"vapor.detuning_nm", "nm", "detuning in intermediate state"},
         [](Config& c) -> double& { return c.vapor.delta_nm; }},
        {{"vapor.baseline_detuning_nm", "nm", "baseline detuning"},
         [](Config& c) -> double& { return c.vapor.delta0_nm; }},
        {{"vapor.temperature_C", "C", "temperature of rubidium vapor"},
         [](Config& c) -> double& { return c.vapor.temperature_C; }},
        {{"vapor.level2_halfwidth_per_s", "s^-1", "half-width of level 2"},
         [](Config& c) -> double& { return c.vapor.gamma1_per_s; }},
        {{"vapor.level3_halfwidth_per_s", "s^-1", "half-width of level 3 (collisions)"},
         [](Config& c) -> double& { return c.vapor.gamma2_per_s; }},
        {{"vapor.dipole_moment_1_m", "m", "dipole moment of the first transition"},
         [](Config& c) -> double& { return c.vapor.d12_m; }},
        {{"vapor.dipole_moment_2_m", "m", "dipole moment of the second transition"},
         [](Config& c) -> double& { return c.vapor.d23_m; }},
        {{"vapor.baseline_tpa_rate_per_s", "s^-1", "baseline cross two-photon absorption rate"},
         [](Config& c) -> double& { return c.vapor.R20_per_s; }},
        {{"vapor.baseline_1pa_rate_per_s", "s^-1", "baseline single-photon absorption rate"},
         [](Config& c) -> double& { return c.vapor.R10_per_s; }},
        {{"vapor.level31_energy_J", "J", "energy of level 3 above level 1"},
         [](Config& c) -> double& { return c.vapor.E31_J; }},
        {{"loss.single_photon_loss_per_cm", "cm^-1", "equivalent single-photon loss rate gamma"},
         [](Config& c) -> double& { return c.loss.gamma_per_cm; }},
        {{"loss.tpa_coefficient_cm_per_GW", "cm/GW", "effective two-photon loss coefficient alpha"},
         [](Config& c) -> double& { return c.loss.alpha_cm_per_GW; }},
        {{"input.P1_W", "W", "input power of field 1 (waveguide A)"}, [](Config& c) -> double& { return c.input.P1_W; }},
        {{"input.P2_W", "W", "input power of field 2 (waveguide B)"}, [](Config& c) -> double& { return c.input.P2_W; }},
        {{"input.seed_W", "W", "initial guess for I2R in the iterative solver"},
         [](Config& c) -> double& { return c.input.seed_W; }},
        {{"input.P1_start_ns", "ns", "turn-on time of field 1 in `simulate`"},
         [](Config& c) -> double& { return c.input.P1_start_ns; }},
        {{"input.P2_start_ns", "ns", "turn-on time of field 2 in `simulate`"},
         [](Config& c) -> double& { return c.input.P2_start_ns; }},
        {{"sim.duration_ns", "ns", "length of `simulate` runs"}, [](Config& c) -> double& { return c.sim.duration_ns; }},
        {{"sim.rise_time_ps", "ps", "raised-cosine edge time of drive segments"},
         [](Config& c) -> double& { return c.sim.rise_time_ps; }},
    };
    return table;
}

const Binding& find_binding(std::string_view key) {
    const auto& table = bindings();
    auto it = std::find_if(table.begin(), table.end(), [&](const Binding& b) { return b.key.name == key; });
    if (it == table.end()) throw ConfigError(std::string(key), "unknown config key '" + std::string(key) + "'");
    return *it;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
    static const std::vector<ConfigKey> keys = [] {
        std::vector<ConfigKey> out;
        for (const auto& b : bindings()) out.push_back(b.key);
        return out;
    }();
    return keys;
}

Config default_config() { return Config{}; }

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, std::string_view key) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ConfigError(std::string(key), "cannot parse value '" + std::string(text) + "' for key '" +
                                                std::string(key) + "'");
    return value;
}

double get_value(const Config& config, std::string_view key) {
    Config copy = config;
    return find_binding(key).field(copy);
}

void set_value(Config& config, std::string_view key, double value) { find_binding(key).field(config) = value; }

void apply_override(Config& config, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError(std::string(assignment), "override '" + std::string(assignment) + "' is not key=value");
    const auto key = trim(assignment.substr(0, eq));
    set_value(config, key, parse_double(assignment.substr(eq + 1), key));
}

Config parse_config(std::string_view text) {
    Config config = default_config();
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no),
                              "config line " + std::to_string(line_no) + " is not 'key = value'");
        const auto key = trim(line.substr(0, eq));
        set_value(config, key, parse_double(line.substr(eq + 1), key));
    }
    return config;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string write_config(const Config& config) {
    std::ostringstream out;
    Config copy = config;
    std::string section;
    for (const auto& b : bindings()) {
        const double v = b.field(copy);
        if (b.key.optional && !(v > 0)) continue;
        const auto sec = b.key.name.substr(0, b.key.name.find('.'));
        if (sec != section) {
            if (!section.empty()) out << '\n';
            section = sec;
        }
        out << "# " << b.key.description;
        if (!b.key.unit.empty()) out << " [" << b.key.unit << "]";
        out << '\n' << b.key.name << " = " << format_double(v) << '\n';
    }
    return out.str();
}

}  // namespace zeno
