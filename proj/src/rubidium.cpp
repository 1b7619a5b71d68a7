#include "zeno/rubidium.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "zeno/errors.hpp"

namespace zeno::rubidium {
namespace {

constexpr double kTmin = 250.0;
constexpr double kTmax = 500.0;

double detuning_factor(const VaporParams& v) {
    if (!(v.delta_nm != 0.0)) throw VirtualResonanceError("detuning from the intermediate level is zero");
    const double r = v.delta0_nm / v.delta_nm;
    return (v.rho_per_cc / v.rho0_per_cc) * r * r;
}

}  // namespace

double matrix_element_J(double d_m, double E_V_per_m) {
    return kPhys.q * d_m * E_V_per_m / std::sqrt(3.0);
}

double detuning_energy_J(double delta_nm, double lambda_nm) {
    const double lambda_m = lambda_nm * 1e-9;
    return kPhys.h * kPhys.c * (delta_nm * 1e-9) / (lambda_m * lambda_m);
}

double single_atom_tpa_rate(double d12_m, double d23_m, double E_V_per_m, double delta_J, double gamma2_per_s) {
    if (!(gamma2_per_s > 0.0)) throw std::invalid_argument("gamma2 must be > 0");
    if (delta_J == 0.0) throw VirtualResonanceError("photon 1 is resonant with the intermediate level");
    const double m = matrix_element_J(d23_m, E_V_per_m) * matrix_element_J(d12_m, E_V_per_m);
    const double hd = kPhys.hbar * delta_J;
    return 8.0 * m * m / (hd * hd) / gamma2_per_s;
}

double single_atom_1pa_rate(double d12_m, double E_V_per_m, double delta_J, double gamma1_per_s) {
    if (!(gamma1_per_s > 0.0)) throw std::invalid_argument("gamma1 must be > 0");
    const double m = matrix_element_J(d12_m, E_V_per_m);
    const double hg = kPhys.hbar * gamma1_per_s;
    return 2.0 * m * m * gamma1_per_s / (delta_J * delta_J + hg * hg);
}

double single_atom_self_tpa_rate(double d12_m, double d23_m, double E_V_per_m, double delta_J, double mismatch_J,
                                 double gamma2_per_s) {
    if (!(gamma2_per_s > 0.0)) throw std::invalid_argument("gamma2 must be > 0");
    if (delta_J == 0.0) throw VirtualResonanceError("photon 1 is resonant with the intermediate level");
    const double m = matrix_element_J(d23_m, E_V_per_m) * matrix_element_J(d12_m, E_V_per_m);
    const double hg = kPhys.hbar * gamma2_per_s;
    return 8.0 * m * m / (delta_J * delta_J) * gamma2_per_s / (mismatch_J * mismatch_J + hg * hg);
}

double self_tpa_ratio(double delta_lambda_nm, double lambda_center_nm, double gamma2_per_s) {
    if (!(gamma2_per_s > 0.0)) throw std::invalid_argument("gamma2 must be > 0");
    const double lambda_m = lambda_center_nm * 1e-9;
    const double dw = 2.0 * std::numbers::pi * kPhys.c * (delta_lambda_nm * 1e-9) / (lambda_m * lambda_m);
    return gamma2_per_s * gamma2_per_s / (dw * dw + gamma2_per_s * gamma2_per_s);
}

RateResult scaled_rates(const VaporParams& vapor, double I1_rel, double I2_rel) {
    if (I1_rel < 0 || I2_rel < 0) throw std::invalid_argument("intensities must be >= 0");
    const double k = detuning_factor(vapor);
    RateResult r;
    r.R2_per_s = k * I1_rel * I2_rel * vapor.R20_per_s;
    r.R1_per_s = k * I1_rel * vapor.R10_per_s;
    return r;
}

RateResult scaled_rates(const VaporParams& vapor, const ResonatorParams& res, double I1_rel, double I2_rel) {
    auto r = scaled_rates(vapor, I1_rel, I2_rel);
    const double center = 0.5 * (res.lambda1_nm + res.lambda2_nm);
    // Self TPA of field 1 relative to cross TPA at equal intensities.
    r.Rs_per_s = r.R2_per_s *
                 self_tpa_ratio(std::abs(res.lambda1_nm - res.lambda2_nm), center, vapor.gamma2_per_s) *
                 (I2_rel > 0 ? I1_rel / I2_rel : 0.0);
    return r;
}

FluxQuantities effective_alpha(const ResonatorParams& res, double R20_per_s, double lambda_m) {
    FluxQuantities f{};
    const double L_cm = res.circumference_cm();
    const double v_cm_per_s = kPhys.c * 100.0 / res.n_eff;
    f.mode_area_cm2 = res.mode_volume_cm3 / L_cm;
    f.dt_roundtrip_s = L_cm / v_cm_per_s;
    f.photon_energy_J = kPhys.h * kPhys.c / lambda_m;
    f.single_photon_flux_W = f.photon_energy_J / f.dt_roundtrip_s;
    f.baseline_loss_per_cm = R20_per_s / v_cm_per_s;
    f.alpha0_cm_per_GW = f.baseline_loss_per_cm * f.mode_area_cm2 / (f.single_photon_flux_W * 1e-9);
    return f;
}

double vapor_pressure_torr(double T_K) {
    if (!(T_K > 0.0)) throw std::invalid_argument("temperature must be > 0 K");
    const double log10p = 15.88253 - 4529.635 / T_K + 0.00058663 * T_K - 2.99138 * std::log10(T_K);
    return std::pow(10.0, log10p);
}

double density_from_temperature(double T_K) {
    if (!(T_K >= kTmin && T_K <= kTmax)) {
        std::ostringstream msg;
        msg << "temperature " << T_K << " K outside [" << kTmin << ", " << kTmax << "] K";
        throw OutOfRangeError(msg.str());
    }
    return vapor_pressure_torr(T_K) * 9.63e18 / T_K;
}

double temperature_for_density(double rho_per_cc) {
    const double lo_rho = density_from_temperature(kTmin);
    const double hi_rho = density_from_temperature(kTmax);
    if (!(rho_per_cc >= lo_rho && rho_per_cc <= hi_rho)) {
        std::ostringstream msg;
        msg << "density " << rho_per_cc << " cm^-3 outside the achievable range [" << lo_rho << ", " << hi_rho
            << "]";
        throw OutOfRangeError(msg.str());
    }
    double lo = kTmin, hi = kTmax;
    while (hi - lo > 1e-7) {
        const double mid = 0.5 * (lo + hi);
        (density_from_temperature(mid) < rho_per_cc ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double required_density(const VaporParams& vapor, double delta_nm) {
    const double r = delta_nm / vapor.delta0_nm;
    return vapor.rho0_per_cc * r * r;
}

std::vector<DesignPoint> self_tpa_curve(double max_nm, int points, double lambda_center_nm, double gamma2_per_s) {
    if (points < 2 || !(max_nm > 0.0)) throw std::invalid_argument("need >= 2 points over a positive span");
    std::vector<DesignPoint> out;
    out.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double dl = max_nm * i / (points - 1);
        out.push_back({dl, std::log10(self_tpa_ratio(dl, lambda_center_nm, gamma2_per_s))});
    }
    return out;
}

std::vector<double> detuning_grid(int k_max) {
    std::vector<double> out;
    for (int k = 1; k <= k_max; ++k) out.push_back(k / 100.0);
    return out;
}

std::vector<DesignPoint> density_curve(const VaporParams& vapor, const std::vector<double>& detunings_nm) {
    std::vector<DesignPoint> out;
    for (double d : detunings_nm) out.push_back({d, std::log10(required_density(vapor, d))});
    return out;
}

std::vector<DesignPoint> temperature_curve(const VaporParams& vapor, const std::vector<double>& detunings_nm) {
    std::vector<DesignPoint> out;
    for (double d : detunings_nm) out.push_back({d, temperature_for_density(required_density(vapor, d)) - 273.15});
    return out;
}

}  // namespace zeno::rubidium
