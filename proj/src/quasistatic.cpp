#include "zeno/quasistatic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "zeno/errors.hpp"

namespace zeno {
namespace {

constexpr cplx kI{0.0, 1.0};

double relative_change(double now, double before) {
    const double scale = std::max(std::abs(now), std::abs(before));
    return scale == 0.0 ? 0.0 : std::abs(now - before) / scale;
}

Branch classify_branch(double I1, double I2) {
    const double scale = std::max(I1, I2);
    if (scale == 0.0 || std::abs(I1 - I2) <= 1e-6 * scale) return Branch::symmetric;
    return I1 > I2 ? Branch::field1_dominant : Branch::field2_dominant;
}

double spectral_radius_2x2(const std::array<double, 4>& m) {
    const double tr = m[0] + m[3];
    const double det = m[0] * m[3] - m[1] * m[2];
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        return std::max(std::abs(tr + s), std::abs(tr - s)) / 2.0;
    }
    return std::sqrt(det);
}

}  // namespace

std::string_view to_string(Branch b) {
    switch (b) {
        case Branch::field1_dominant: return "field1-dominant";
        case Branch::field2_dominant: return "field2-dominant";
        case Branch::symmetric: return "symmetric";
    }
    return "?";
}

cplx loop_factor(double other_power_W, double phi, const Device& dev) {
    const double att = (dev.gamma_per_cm() + dev.alpha_cm_per_W() * other_power_W / dev.A_cm2()) * dev.L_cm();
    return std::polar(std::exp(-att), phi);
}

cplx half_loop_factor(double other_power_W, double phi, const Device& dev) {
    const double att = (dev.gamma_per_cm() + dev.alpha_cm_per_W() * other_power_W / dev.A_cm2()) * dev.L_cm();
    return std::polar(std::exp(-0.5 * att), 0.5 * phi);
}

cplx intracavity_response(cplx E_in, double other_power_W, double phi, const Device& dev) {
    const double T = dev.T();
    const cplx denom = 1.0 - loop_factor(other_power_W, phi, dev) * (T * T);
    if (std::abs(denom) < 1e-15)
        throw SingularResonanceError("round-trip gain is unity (lossless loop on resonance); no steady state");
    return kI * dev.R() * E_in / denom;
}

double consistency_residual(cplx E_R, double P_in_W, double other_power_W, double phi, const Device& dev) {
    const double mag = std::abs(E_R);
    if (mag == 0.0) return 0.0;
    const double T = dev.T();
    const cplx rhs = E_R * loop_factor(other_power_W, phi, dev) * (T * T) + kI * dev.R() * std::sqrt(P_in_W);
    return std::abs(E_R - rhs) / mag;
}

OutputPowers output_fields(cplx E1R, cplx E2R, InputPowers in, const Device& dev) {
    const auto& res = dev.resonator();
    const double T = dev.T();
    const double R = dev.R();
    const double I1 = std::norm(E1R);
    const double I2 = std::norm(E2R);

    const cplx E1A = T * std::sqrt(in.P1_W) + kI * R * T * loop_factor(I2, res.phi1_rad, dev) * E1R;
    const cplx E1B = kI * R * half_loop_factor(I2, res.phi1_rad, dev) * E1R;
    const cplx E2B = T * std::sqrt(in.P2_W) + kI * R * T * loop_factor(I1, res.phi2_rad, dev) * E2R;
    const cplx E2A = kI * R * half_loop_factor(I1, res.phi2_rad, dev) * E2R;
    return {std::norm(E1A), std::norm(E1B), std::norm(E2A), std::norm(E2B)};
}

std::array<double, 2> iteration_map(std::array<double, 2> intensities, InputPowers in, const Device& dev) {
    const auto& res = dev.resonator();
    const double I1 = std::norm(intracavity_response(std::sqrt(in.P1_W), intensities[1], res.phi1_rad, dev));
    const double I2 = std::norm(intracavity_response(std::sqrt(in.P2_W), I1, res.phi2_rad, dev));
    return {I1, I2};
}

StabilityVerdict classify_stability(const SteadySolution& sol, InputPowers in, const Device& dev) {
    const std::array<double, 2> x{sol.I1R_W, sol.I2R_W};
    const double fallback = 1e-6 * std::max({x[0], x[1], 1e-12});

    StabilityVerdict v;
    for (int j = 0; j < 2; ++j) {
        const double h = x[j] > 0.0 ? 1e-6 * x[j] : fallback;
        auto plus = x;
        plus[j] += h;
        const auto f_plus = iteration_map(plus, in, dev);
        std::array<double, 2> col{};
        if (x[j] - h >= 0.0) {
            auto minus = x;
            minus[j] -= h;
            const auto f_minus = iteration_map(minus, in, dev);
            for (int i = 0; i < 2; ++i) col[i] = (f_plus[i] - f_minus[i]) / (2.0 * h);
        } else {
            const auto f0 = iteration_map(x, in, dev);
            for (int i = 0; i < 2; ++i) col[i] = (f_plus[i] - f0[i]) / h;
        }
        v.jacobian[0 * 2 + j] = col[0];
        v.jacobian[1 * 2 + j] = col[1];
    }
    v.spectral_radius = spectral_radius_2x2(v.jacobian);
    v.stable = v.spectral_radius < 1.0;
    return v;
}

SteadySolution solve_fixed_point(InputPowers in, const Device& dev, double seed_I2R_W, SolverOptions opts) {
    if (in.P1_W < 0 || in.P2_W < 0) throw std::invalid_argument("input powers must be >= 0");
    if (seed_I2R_W < 0) throw std::invalid_argument("seed intensity must be >= 0");

    const auto& res = dev.resonator();
    const double a1 = std::sqrt(in.P1_W);
    const double a2 = std::sqrt(in.P2_W);

    double I1 = std::numeric_limits<double>::quiet_NaN();
    double I2 = seed_I2R_W;
    cplx E1, E2;
    std::deque<std::pair<double, double>> tail;

    for (int it = 1; it <= opts.max_iterations; ++it) {
        E1 = intracavity_response(a1, I2, res.phi1_rad, dev);
        const double I1n = std::norm(E1);
        E2 = intracavity_response(a2, I1n, res.phi2_rad, dev);
        const double I2n = std::norm(E2);

        const double change = std::isnan(I1) ? std::numeric_limits<double>::infinity()
                                             : std::max(relative_change(I1n, I1), relative_change(I2n, I2));
        I1 = I1n;
        I2 = I2n;
        tail.emplace_back(I1, I2);
        if (tail.size() > 8) tail.pop_front();

        if (!std::isfinite(I1) || !std::isfinite(I2)) break;
        if (change < opts.tolerance) {
            SteadySolution sol;
            sol.I1R_W = I1;
            sol.I2R_W = I2;
            sol.E1R = E1;
            sol.E2R = E2;
            sol.iterations = it;
            sol.branch = classify_branch(I1, I2);
            const auto verdict = classify_stability(sol, in, dev);
            sol.stable = verdict.stable;
            sol.spectral_radius = verdict.spectral_radius;
            sol.outputs = output_fields(E1, E2, in, dev);
            return sol;
        }
    }
    std::ostringstream msg;
    msg << "fixed-point iteration did not converge within " << opts.max_iterations
        << " iterations; last (I1R, I2R) = (" << I1 << ", " << I2 << ") W";
    throw DivergenceError(msg.str(), {tail.begin(), tail.end()});
}

SteadySolution find_symmetric_solution(double P_in_W, const Device& dev) {
    const auto& res = dev.resonator();
    if (P_in_W < 0) throw std::invalid_argument("input power must be >= 0");
    if (res.phi1_rad != res.phi2_rad)
        throw std::invalid_argument("symmetric solution requires identical round-trip phases");

    const double amp = std::sqrt(P_in_W);
    const auto excess = [&](double I) { return std::norm(intracavity_response(amp, I, res.phi1_rad, dev)) - I; };

    double lo = 0.0;
    double I = 0.0;
    if (P_in_W > 0.0) {
        double hi = std::norm(intracavity_response(amp, 0.0, res.phi1_rad, dev));
        int grow = 0;
        while (!(excess(hi) < 0.0)) {
            if (++grow > 200 || !std::isfinite(hi))
                throw NoSymmetricSolutionError("no bracketing interval for the symmetric solution");
            hi *= 2.0;
        }
        // Bisect down to adjacent doubles.
        for (int it = 0; it < 400; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (excess(mid) >= 0.0 ? lo : hi) = mid;
        }
        I = 0.5 * (lo + hi);
    }

    const InputPowers in{P_in_W, P_in_W};
    SteadySolution sol;
    sol.E1R = intracavity_response(amp, I, res.phi1_rad, dev);
    sol.E2R = sol.E1R;
    sol.I1R_W = std::norm(sol.E1R);
    sol.I2R_W = sol.I1R_W;
    sol.branch = Branch::symmetric;
    const auto verdict = classify_stability(sol, in, dev);
    sol.stable = verdict.stable;
    sol.spectral_radius = verdict.spectral_radius;
    sol.outputs = output_fields(sol.E1R, sol.E2R, in, dev);
    return sol;
}

std::vector<CurvePoint> response_curve(std::span<const double> assumed_W, double P_in_W, double phi,
                                       const Device& dev) {
    std::vector<CurvePoint> out;
    out.reserve(assumed_W.size());
    const double amp = std::sqrt(P_in_W);
    for (double a : assumed_W) out.push_back({a, std::norm(intracavity_response(amp, a, phi, dev))});
    return out;
}

}  // namespace zeno
