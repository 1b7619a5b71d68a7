#pragma once

// Two-photon and single-photon absorption in rubidium vapor (5S -> 5P -> 5D
// ladder), the effective TPA coefficient of the resonator mode, and the vapor
// thermodynamics that set the atomic density.

#include <vector>

#include "zeno/model.hpp"

namespace zeno::rubidium {

struct RateResult {
    double R2_per_s = 0;  // cross TPA
    double R1_per_s = 0;  // single-photon absorption
    double Rs_per_s = 0;  // self TPA
};

struct FluxQuantities {
    double mode_area_cm2;
    double dt_roundtrip_s;
    double photon_energy_J;
    double single_photon_flux_W;  // P_f
    double baseline_loss_per_cm;  // L0
    double alpha0_cm_per_GW;
};

// Orientation-averaged transition matrix element |<j| q r.E |i>| for a dipole
// of length `d_m` in a field of amplitude `E_V_per_m`: q d E / sqrt(3).
double matrix_element_J(double d_m, double E_V_per_m);

// Detuning energy for a wavelength offset around `lambda_nm`: h c dl / l^2.
double detuning_energy_J(double delta_nm, double lambda_nm = 780.0);

// Single-atom cross-TPA rate. Throws VirtualResonanceError when delta == 0.
double single_atom_tpa_rate(double d12_m, double d23_m, double E_V_per_m, double delta_J, double gamma2_per_s);

// Single-atom off-resonant single-photon absorption rate (Lorentzian).
double single_atom_1pa_rate(double d12_m, double E_V_per_m, double delta_J, double gamma1_per_s);

// Single-atom self-TPA rate for two photons of one frequency whose sum misses
// level 3 by `mismatch_J`.
double single_atom_self_tpa_rate(double d12_m, double d23_m, double E_V_per_m, double delta_J, double mismatch_J,
                                 double gamma2_per_s);

// Rs / R2 for two beams `delta_lambda_nm` apart around `lambda_center_nm`.
double self_tpa_ratio(double delta_lambda_nm, double lambda_center_nm, double gamma2_per_s);

// Baseline-anchored rates; intensities are in units of the single-photon
// intensities I10, I20. Rs is filled from self_tpa_ratio at the vapor's
// configured wavelengths.
RateResult scaled_rates(const VaporParams& vapor, double I1_rel, double I2_rel);
RateResult scaled_rates(const VaporParams& vapor, const ResonatorParams& res, double I1_rel, double I2_rel);

FluxQuantities effective_alpha(const ResonatorParams& res, double R20_per_s, double lambda_m);

// Saturated vapor pressure of Rb (torr) at temperature T (K).
double vapor_pressure_torr(double T_K);
// Atomic density (cm^-3) from the ideal gas law; T must lie in [250, 500] K.
double density_from_temperature(double T_K);
// Inverse of density_from_temperature by bisection to 1e-6 K. Throws
// OutOfRangeError outside the forward map's range.
double temperature_for_density(double rho_per_cc);

// Density that reproduces the baseline TPA rate at detuning `delta_nm`.
double required_density(const VaporParams& vapor, double delta_nm);

struct DesignPoint {
    double x;
    double y;
};

// (delta_lambda_nm, log10 Rs/R2) on a uniform grid of `points` from 0 to `max_nm`.
std::vector<DesignPoint> self_tpa_curve(double max_nm, int points, double lambda_center_nm, double gamma2_per_s);
// Detunings k / 100 nm for k = 1 .. k_max.
std::vector<double> detuning_grid(int k_max);
// (detuning_nm, log10 required density).
std::vector<DesignPoint> density_curve(const VaporParams& vapor, const std::vector<double>& detunings_nm);
// (detuning_nm, vapor temperature in C giving the required density).
std::vector<DesignPoint> temperature_curve(const VaporParams& vapor, const std::vector<double>& detunings_nm);

}  // namespace zeno::rubidium
