#pragma once

// Domain types shared by every module of the simulator.
//
// Unit conventions
//   * intracavity amplitudes a are complex with |a|^2 = circulating power (W)
//   * TPA intensity I = |a|^2 / A in GW/cm^2, so alpha * I * L is dimensionless
//     with alpha in cm/GW and L in cm
//   * lengths that enter the loop algebra are in cm; SI accessors are provided
//
// Parameter structs hold values in the units of their config keys so that a
// config file written from a bundle re-reads bit-exactly.

#include <numbers>

namespace zeno {

struct PhysConstants {
    double c;     // m/s
    double h;     // J s
    double hbar;  // J s
    double q;     // C
};

inline constexpr PhysConstants kPhys{
    299792458.0,
    6.62607015e-34,
    6.62607015e-34 / (2.0 * std::numbers::pi),
    1.602176634e-19,
};

struct ResonatorParams {
    double Q = 5e7;
    double major_diameter_um = 50.0;
    double minor_diameter_um = 0.35;
    double n_eff = 1.30;
    double lambda1_nm = 780.0;
    double lambda2_nm = 776.0;
    double coupling_R = 0.082;
    // <= 0 means "derive from R".
    double transmission_T = -1.0;
    // <= 0 means "derive from the mode volume".
    double mode_area_cm2 = -1.0;
    double mode_volume_cm3 = 7.6e-11;
    double phi1_rad = 0.0;
    double phi2_rad = 0.0;

    double major_diameter_m() const { return major_diameter_um * 1e-6; }
    double lambda1_m() const { return lambda1_nm * 1e-9; }
    double lambda2_m() const { return lambda2_nm * 1e-9; }
    double circumference_cm() const { return std::numbers::pi * major_diameter_um * 1e-4; }
};

struct VaporParams {
    double rho_per_cc = 5.6e10;
    double rho0_per_cc = 1e14;
    double delta_nm = 0.05;
    double delta0_nm = 2.12;
    double temperature_C = 43.0;
    double gamma1_per_s = 1.9e7;
    double gamma2_per_s = 3.14e8;
    double d12_m = 2.23e-10;
    double d23_m = 0.492e-10;
    double R20_per_s = 9.41e8;
    double R10_per_s = 1.12e8;
    double E31_J = 5.1055818e-19;

    double temperature_K() const { return temperature_C + 273.15; }
};

struct LossModel {
    double gamma_per_cm = 2.13e-3;
    double alpha_cm_per_GW = 5.27e5;
};

// Operating point for `solve`/`simulate` and the default sweep base.
struct InputSettings {
    double P1_W = 3.7e-4;
    double P2_W = 3.7e-4;
    double seed_W = 0.0;
    double P1_start_ns = 0.0;
    double P2_start_ns = 0.5;
};

struct SimSettings {
    double duration_ns = 10.0;
    double rise_time_ps = 10.0;
};

// Raw, unvalidated parameter set as read from a config file.
struct Config {
    ResonatorParams resonator;
    VaporParams vapor;
    LossModel loss;
    InputSettings input;
    SimSettings sim;
};

// A validated parameter bundle with every derived quantity filled in.
// Immutable after construction; safe to share across threads.
class Device {
public:
    const Config& config() const { return config_; }
    const ResonatorParams& resonator() const { return config_.resonator; }
    const VaporParams& vapor() const { return config_.vapor; }
    const LossModel& loss() const { return config_.loss; }

    double R() const { return R_; }
    double T() const { return T_; }
    double L_cm() const { return L_cm_; }
    double A_cm2() const { return A_cm2_; }
    double dt_s() const { return dt_s_; }
    // Loss rate used by the device model (the configured value).
    double gamma_per_cm() const { return config_.loss.gamma_per_cm; }
    // Loss rate implied by Q at wavelength 1, reported alongside.
    double gamma_from_Q_per_cm() const { return gamma_Q_per_cm_; }
    double alpha_cm_per_W() const { return config_.loss.alpha_cm_per_GW * 1e-9; }

private:
    friend Device validate(const Config& config);
    Config config_;
    double R_ = 0, T_ = 1, L_cm_ = 0, A_cm2_ = 0, dt_s_ = 0, gamma_Q_per_cm_ = 0;
};

// Checks every invariant and fills derived quantities (L, A, dt, T).
// Throws ValidationError naming the offending config key.
Device validate(const Config& config);

}  // namespace zeno
