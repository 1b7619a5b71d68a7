#include <string>

#include "support.hpp"
#include "zeno/errors.hpp"
#include "zeno/performance.hpp"

using namespace zeno;
using namespace zeno::performance;

namespace {

constexpr double kLambda = 780e-9, kQ = 5e7, kN = 1.30;
const double kL_m = std::numbers::pi * 50e-6;

}  // namespace

TEST_CASE("enhancement factor and Q-derived loss") {
    const double f = enhancement_factor(kLambda, kQ, kN, kL_m);
    CHECK(zt::rel(f, 30396.355092701331) < 1e-13);
    CHECK(zt::rel(f, 30350) < 0.01);
    CHECK(zt::rel(enhancement_factor(kLambda, 2 * kQ, kN, kL_m), 2 * f) < 1e-15);

    const double g = gamma_from_Q(kLambda, kQ, kN);
    CHECK(zt::rel(g, 0.0020943951023931955) < 1e-13);
    CHECK(zt::rel(g, 2.13e-3) < 0.02);
    CHECK(zt::rel(gamma_from_Q(kLambda / 2, kQ, kN), 2 * g) < 1e-15);
    CHECK(gamma_from_Q(kLambda, 1e300, kN) < 1e-290);
    CHECK_THROWS(enhancement_factor(kLambda, 0.0, kN, kL_m));

    for (int i = 0; i < 200; ++i) {
        const double lam = zt::uniform(300e-9, 2000e-9), Q = zt::log_uniform(1e3, 1e10);
        const double n = zt::uniform(1.0, 3.5), L = zt::log_uniform(1e-5, 1e-2);
        CHECK(std::abs(enhancement_factor(lam, Q, n, L) * gamma_from_Q(lam, Q, n) * (L * 100.0) - 1.0) < 1e-12);
    }
}

TEST_CASE("critical coupling estimate") {
    const double L_cm = std::numbers::pi * 50e-4;
    const auto c = critical_coupling(2.13e-3, L_cm);
    CHECK(zt::rel(c.R, 0.005784285760639018) < 1e-14);
    CHECK(zt::rel(c.f_check, 1.0 / (2.13e-3 * L_cm)) < 1e-12);
    CHECK_FALSE(c.warn);
    CHECK(critical_coupling(0.0, L_cm).R == 0.0);
    CHECK(critical_coupling(7.0, L_cm).warn);
    CHECK_THROWS_AS(critical_coupling(100.0, L_cm), OutsideApproximationError);

    // In the exact two-coupler model R = sqrt(gamma L) leaves a quarter of a
    // lone field in the through port; strongly overcoupled rings null it.
    CHECK(zt::rel(through_fraction(c.R, 2.13e-3, L_cm), 0.24999581764400149) < 1e-9);
    CHECK(through_fraction(10.0 * c.R, 2.13e-3, L_cm) < 1e-3);
}

TEST_CASE("balance power") {
    const double A = 4.838310269993618e-9;
    const double f = 30396.355092701331;
    const double Pc = balance_power(2.13e-3, A, 5.27e5, f);
    CHECK(zt::rel(Pc, 6.433409472019174e-13) < 1e-12);
    CHECK(zt::rel(balance_power(2.13e-3, A, 5.27e5, 30350), 6.443235544258419e-13) < 1e-12);
    CHECK(zt::rel(balance_power(2 * 2.13e-3, A, 2 * 5.27e5, f), Pc) < 1e-15);
    CHECK(balance_power(2.13e-3, A, 1e300, f) < 1e-290);
    CHECK(balance_residual(Pc, 2.13e-3, A, 5.27e5, f) < 1e-9);
    CHECK(balance_residual(2 * Pc, 2.13e-3, A, 5.27e5, f) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS(balance_power(0.0, A, 5.27e5, f));
}

TEST_CASE("routing coupling") {
    const double L_cm = std::numbers::pi * 50e-4;
    CHECK(zt::rel(drop_fraction(0.082, 2.13e-3, L_cm), 0.9901549499946760) < 1e-12);
    CHECK(zt::rel(through_fraction(0.082, 2.13e-3, L_cm), 2.435099190746102e-5) < 1e-9);
    const double R = routing_coupling(2.13e-3, L_cm, 0.99);
    CHECK(std::abs(R - 0.08135958885023461) < 1e-12);
    CHECK(R < 0.082);
    CHECK_THROWS_AS(routing_coupling(2.13e-3, L_cm, 1.0), OutOfRangeError);
}

TEST_CASE("switch quality") {
    const double P = 3.7e-4;
    SUBCASE("nominal operating point") {
        const auto q = switch_quality(zt::default_device(), P, P);
        CHECK(q.crosstalk < 0.01);
        CHECK(q.insertion_loss < 0.03);
        CHECK(q.crosstalk >= 0.0);
        CHECK(q.on_solution.branch == Branch::field1_dominant);
    }
    SUBCASE("without TPA the control has no effect") {
        const auto d = zt::device_with([](Config& c) { c.loss.alpha_cm_per_GW = 0.0; });
        const auto q = switch_quality(d, P, P);
        CHECK(q.crosstalk > 0.98);
    }
    SUBCASE("lossless cavity routes the target completely") {
        const auto d = zt::device_with([](Config& c) { c.loss.gamma_per_cm = 0.0; });
        const auto q = switch_quality(d, P, P);
        CHECK(q.control_off.out_2A_W / P == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("perf report") {
    const auto r = perf_report(zt::default_device(), false, 3.7e-4);
    CHECK(r.P_c_quoted_W == 3.7e-7);
    CHECK(zt::rel(r.P_c_ratio, 575122.7270846677) < 1e-9);
    CHECK(r.balance_residual < 1e-9);
    CHECK(r.gamma_used_per_cm == 2.13e-3);
    const auto q = perf_report(zt::default_device(), true, 3.7e-4);
    CHECK(q.gamma_used_per_cm == q.gamma_Q_per_cm);
    CHECK(q.balance_residual < 1e-9);

    const auto text = format_report(r);
    for (const char* key : {"balance_power_W = ", "balance_power_quoted_W = 3.7e-07", "quoted_over_computed = ",
                            "crosstalk = ", "gamma_source = config"})
        CHECK(text.find(key) != std::string::npos);
}
