#include "zeno/model.hpp"

#include <cmath>
#include <string>

#include "zeno/errors.hpp"

namespace zeno {
namespace {

void require(bool ok, const char* key, const std::string& why) {
    if (!ok) throw ValidationError(key, std::string("invalid ") + key + ": " + why);
}

bool finite_all(const Config& c) {
    const double v[] = {
        c.resonator.Q, c.resonator.major_diameter_um, c.resonator.minor_diameter_um,
        c.resonator.n_eff, c.resonator.lambda1_nm, c.resonator.lambda2_nm,
        c.resonator.coupling_R, c.resonator.transmission_T, c.resonator.mode_area_cm2,
        c.resonator.mode_volume_cm3, c.resonator.phi1_rad, c.resonator.phi2_rad,
        c.vapor.rho_per_cc, c.vapor.rho0_per_cc, c.vapor.delta_nm, c.vapor.delta0_nm,
        c.vapor.temperature_C, c.vapor.gamma1_per_s, c.vapor.gamma2_per_s, c.vapor.d12_m,
        c.vapor.d23_m, c.vapor.R20_per_s, c.vapor.R10_per_s, c.vapor.E31_J,
        c.loss.gamma_per_cm, c.loss.alpha_cm_per_GW, c.input.P1_W, c.input.P2_W,
        c.input.seed_W, c.input.P1_start_ns, c.input.P2_start_ns, c.sim.duration_ns,
        c.sim.rise_time_ps,
    };
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

Device validate(const Config& config) {
    require(finite_all(config), "config", "all values must be finite");

    const auto& r = config.resonator;
    require(r.Q > 0, "resonator.Q", "must be > 0");
    require(r.minor_diameter_um > 0, "resonator.minor_diameter_um", "must be > 0");
    require(r.major_diameter_um > r.minor_diameter_um, "resonator.major_diameter_um",
            "must exceed the minor diameter");
    require(r.n_eff > 0, "resonator.effective_index", "must be > 0");
    require(r.lambda1_nm > 0, "resonator.wavelength1_nm", "must be > 0");
    require(r.lambda2_nm > 0, "resonator.wavelength2_nm", "must be > 0");
    require(r.coupling_R >= 0 && r.coupling_R < 1, "resonator.coupling_R", "must lie in [0, 1)");

    double T = std::sqrt(1.0 - r.coupling_R * r.coupling_R);
    if (r.transmission_T > 0) {
        require(r.transmission_T <= 1, "resonator.transmission_T", "must lie in (0, 1]");
        require(std::abs(r.coupling_R * r.coupling_R + r.transmission_T * r.transmission_T - 1.0) <= 1e-12,
                "resonator.transmission_T", "R^2 + T^2 must equal 1");
        T = r.transmission_T;
    }
    require(r.mode_area_cm2 > 0 || r.mode_volume_cm3 > 0, "resonator.mode_volume_cm3",
            "either the mode volume or the mode area must be positive");

    const auto& v = config.vapor;
    require(v.rho_per_cc > 0, "vapor.density_per_cc", "must be > 0");
    require(v.rho0_per_cc > 0, "vapor.baseline_density_per_cc", "must be > 0");
    require(v.delta_nm > 0, "vapor.detuning_nm", "must be > 0");
    require(v.delta0_nm > 0, "vapor.baseline_detuning_nm", "must be > 0");
    require(v.temperature_K() > 0, "vapor.temperature_C", "must be above absolute zero");
    require(v.gamma1_per_s > 0, "vapor.level2_halfwidth_per_s", "must be > 0");
    require(v.gamma2_per_s > 0, "vapor.level3_halfwidth_per_s", "must be > 0");
    require(v.d12_m > 0, "vapor.dipole_moment_1_m", "must be > 0");
    require(v.d23_m > 0, "vapor.dipole_moment_2_m", "must be > 0");
    require(v.R20_per_s > 0, "vapor.baseline_tpa_rate_per_s", "must be > 0");
    require(v.R10_per_s > 0, "vapor.baseline_1pa_rate_per_s", "must be > 0");
    require(v.E31_J > 0, "vapor.level31_energy_J", "must be > 0");

    require(config.loss.gamma_per_cm >= 0, "loss.single_photon_loss_per_cm", "must be >= 0");
    require(config.loss.alpha_cm_per_GW >= 0, "loss.tpa_coefficient_cm_per_GW", "must be >= 0");

    require(config.input.P1_W >= 0, "input.P1_W", "must be >= 0");
    require(config.input.P2_W >= 0, "input.P2_W", "must be >= 0");
    require(config.input.seed_W >= 0, "input.seed_W", "must be >= 0");
    require(config.input.P1_start_ns >= 0, "input.P1_start_ns", "must be >= 0");
    require(config.input.P2_start_ns >= 0, "input.P2_start_ns", "must be >= 0");
    require(config.sim.duration_ns > 0, "sim.duration_ns", "must be > 0");
    require(config.sim.rise_time_ps >= 0, "sim.rise_time_ps", "must be >= 0");

    Device d;
    d.config_ = config;
    d.R_ = r.coupling_R;
    d.T_ = T;
    d.L_cm_ = r.circumference_cm();
    d.A_cm2_ = r.mode_area_cm2 > 0 ? r.mode_area_cm2 : r.mode_volume_cm3 / d.L_cm_;
    d.dt_s_ = r.circumference_cm() * 1e-2 * r.n_eff / kPhys.c;
    d.gamma_Q_per_cm_ = 2.0 * std::numbers::pi * r.n_eff / (r.lambda1_nm * 1e-7 * r.Q);
    return d;
}

}  // namespace zeno
