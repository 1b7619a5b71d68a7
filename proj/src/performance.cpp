#include "zeno/performance.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "zeno/config.hpp"
#include "zeno/errors.hpp"

namespace zeno::performance {
namespace {

void require_positive(double x, const char* what) {
    if (!(x > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
}

}  // namespace

double enhancement_factor(double lambda_m, double Q, double n_e, double L_m) {
    require_positive(lambda_m, "lambda");
    require_positive(Q, "Q");
    require_positive(n_e, "n_e");
    require_positive(L_m, "L");
    return lambda_m * Q / (2.0 * std::numbers::pi * n_e * L_m);
}

double gamma_from_Q(double lambda_m, double Q, double n_e) {
    require_positive(lambda_m, "lambda");
    require_positive(Q, "Q");
    require_positive(n_e, "n_e");
    return 2.0 * std::numbers::pi * n_e / (lambda_m * 100.0 * Q);
}

CouplingEstimate critical_coupling(double gamma_per_cm, double L_cm) {
    if (!(gamma_per_cm >= 0.0) || !(L_cm > 0.0)) throw std::invalid_argument("gamma >= 0 and L > 0 required");
    const double gl = gamma_per_cm * L_cm;
    if (gl >= 1.0) {
        std::ostringstream msg;
        msg << "gamma L = " << gl << " is outside the small-loss approximation";
        throw OutsideApproximationError(msg.str());
    }
    const double R = std::sqrt(gl);
    return {R, R > 0.0 ? 1.0 / (R * R) : INFINITY, gl > 0.1};
}

double balance_power(double gamma_per_cm, double A_cm2, double alpha_cm_per_GW, double f) {
    require_positive(gamma_per_cm, "gamma");
    require_positive(A_cm2, "A");
    require_positive(alpha_cm_per_GW, "alpha");
    require_positive(f, "f");
    return gamma_per_cm * A_cm2 / (alpha_cm_per_GW * 1e-9 * f);
}

double balance_residual(double P_W, double gamma_per_cm, double A_cm2, double alpha_cm_per_GW, double f) {
    const double circulating = f * P_W;
    const double tpa = alpha_cm_per_GW * 1e-9 * circulating * circulating / A_cm2;
    const double lin = gamma_per_cm * circulating;
    return std::abs(tpa - lin) / lin;
}

double drop_fraction(double R, double gamma_per_cm, double L_cm) {
    const double x = R * R;
    const double g = std::exp(-gamma_per_cm * L_cm);
    const double d = 1.0 - (1.0 - x) * g;
    return x * x * g / (d * d);
}

double through_fraction(double R, double gamma_per_cm, double L_cm) {
    const double x = R * R;
    const double g = std::exp(-gamma_per_cm * L_cm);
    const double n = (1.0 - x) * (1.0 - g) * (1.0 - g);
    const double d = 1.0 - (1.0 - x) * g;
    // T - R^2 T g / (1 - T^2 g) = T (1 - g) / (1 - T^2 g)
    return n / (d * d);
}

double routing_coupling(double gamma_per_cm, double L_cm, double target) {
    const double limit = std::exp(-gamma_per_cm * L_cm);
    if (!(target > 0.0 && target < limit)) {
        std::ostringstream msg;
        msg << "drop fraction " << target << " unreachable (limit " << limit << ")";
        throw OutOfRangeError(msg.str());
    }
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        (drop_fraction(mid, gamma_per_cm, L_cm) < target ? lo : hi) = mid;
    }
    return hi;
}

SwitchQuality switch_quality(const Device& dev, double P_control_W, double P_target_W) {
    require_positive(P_target_W, "target power");
    SwitchQuality q{};
    q.control_off = solve_fixed_point({0.0, P_target_W}, dev).outputs;
    q.on_solution = solve_fixed_point({P_control_W, P_target_W}, dev, 0.0);
    q.control_on = q.on_solution.outputs;

    const double off_wrong = q.control_off.out_2B_W / P_target_W;
    const double on_wrong = q.control_on.out_2A_W / P_target_W;
    q.crosstalk = std::max(off_wrong, on_wrong);
    q.insertion_loss =
        std::max(1.0 - q.control_off.out_2A_W / P_target_W, 1.0 - q.control_on.out_2B_W / P_target_W);
    return q;
}

PerfReport perf_report(const Device& dev, bool use_gamma_from_Q, double operating_power_W) {
    const auto& res = dev.resonator();
    PerfReport r{};
    r.f = enhancement_factor(res.lambda1_m(), res.Q, res.n_eff, dev.L_cm() * 1e-2);
    r.gamma_Q_per_cm = gamma_from_Q(res.lambda1_m(), res.Q, res.n_eff);
    r.gamma_from_Q_selected = use_gamma_from_Q;
    r.gamma_used_per_cm = use_gamma_from_Q ? r.gamma_Q_per_cm : dev.gamma_per_cm();
    const auto cc = critical_coupling(r.gamma_used_per_cm, dev.L_cm());
    r.R_crit = cc.R;
    r.R_crit_warn = cc.warn;
    r.P_c_W = balance_power(r.gamma_used_per_cm, dev.A_cm2(), dev.loss().alpha_cm_per_GW, r.f);
    r.P_c_quoted_W = kQuotedBalancePower_W;
    r.P_c_ratio = r.P_c_quoted_W / r.P_c_W;
    r.balance_residual = balance_residual(r.P_c_W, r.gamma_used_per_cm, dev.A_cm2(), dev.loss().alpha_cm_per_GW, r.f);
    r.operating_power_W = operating_power_W;
    const auto q = switch_quality(dev, operating_power_W, operating_power_W);
    r.crosstalk = q.crosstalk;
    r.insertion_loss = q.insertion_loss;
    return r;
}

std::string format_report(const PerfReport& r) {
    std::ostringstream os;
    const auto kv = [&](const char* k, double v) { os << k << " = " << format_double(v) << '\n'; };
    kv("enhancement_factor", r.f);
    kv("gamma_from_Q_per_cm", r.gamma_Q_per_cm);
    kv("gamma_used_per_cm", r.gamma_used_per_cm);
    os << "gamma_source = " << (r.gamma_from_Q_selected ? "Q" : "config") << '\n';
    kv("critical_coupling_R", r.R_crit);
    if (r.R_crit_warn) os << "warning = gamma L > 0.1, critical coupling estimate is approximate\n";
    kv("balance_power_W", r.P_c_W);
    kv("balance_power_quoted_W", r.P_c_quoted_W);
    kv("quoted_over_computed", r.P_c_ratio);
    kv("balance_residual", r.balance_residual);
    kv("operating_power_W", r.operating_power_W);
    kv("crosstalk", r.crosstalk);
    kv("insertion_loss", r.insertion_loss);
    return os.str();
}

}  // namespace zeno::performance
