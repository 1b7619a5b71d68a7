#pragma once

// Closed-form resonator algebra and switch quality metrics.

#include <string>

#include "zeno/quasistatic.hpp"

namespace zeno::performance {

// f = lambda Q / (2 pi n_e L), lengths in metres.
double enhancement_factor(double lambda_m, double Q, double n_e, double L_m);

// gamma = 2 pi n_e / (lambda Q), returned in cm^-1.
double gamma_from_Q(double lambda_m, double Q, double n_e);

struct CouplingEstimate {
    double R;
    double f_check;  // 1 / R^2
    bool warn;       // gamma L > 0.1: small-loss expansion is getting poor
};

// R = sqrt(gamma L). Throws OutsideApproximationError for gamma L >= 1.
CouplingEstimate critical_coupling(double gamma_per_cm, double L_cm);

// P_c = gamma A / (alpha f), alpha in cm/GW.
double balance_power(double gamma_per_cm, double A_cm2, double alpha_cm_per_GW, double f);

// Relative mismatch between the TPA loss rate alpha (fP)^2 / A and the linear
// loss rate gamma f P at input power P (both in W/cm).
double balance_residual(double P_W, double gamma_per_cm, double A_cm2, double alpha_cm_per_GW, double f);

// Fraction of a lone field's input that leaves through the drop port in the
// exact two-coupler model, on resonance, without TPA.
double drop_fraction(double R, double gamma_per_cm, double L_cm);
double through_fraction(double R, double gamma_per_cm, double L_cm);

// Smallest R whose drop fraction reaches `target`. Throws OutOfRangeError when
// the target exceeds the lossless-coupler limit e^{-gamma L}.
double routing_coupling(double gamma_per_cm, double L_cm, double target);

struct SwitchQuality {
    double crosstalk;
    double insertion_loss;
    // Control off: target alone, routed to the drop port (out_2A).
    OutputPowers control_off;
    // Control on: target passes straight through (out_2B).
    OutputPowers control_on;
    SteadySolution on_solution;
};

// Control is field 1, target is field 2.
SwitchQuality switch_quality(const Device& dev, double P_control_W, double P_target_W);

struct PerfReport {
    double f;
    double gamma_Q_per_cm;
    double gamma_used_per_cm;
    bool gamma_from_Q_selected;
    double R_crit;
    bool R_crit_warn;
    double P_c_W;
    double P_c_quoted_W;
    double P_c_ratio;  // quoted / computed
    double balance_residual;
    double operating_power_W;
    double crosstalk;
    double insertion_loss;
};

inline constexpr double kQuotedBalancePower_W = 3.7e-7;

// Evaluates the closed forms for `dev`, with the switch run at `operating_power_W`
// for both control and target.
PerfReport perf_report(const Device& dev, bool use_gamma_from_Q, double operating_power_W);

std::string format_report(const PerfReport& r);

}  // namespace zeno::performance
