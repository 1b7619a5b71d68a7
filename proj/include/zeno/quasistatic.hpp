#pragma once

// Steady-state response of the two intracavity fields.
//
// Field 1 (frequency w1) enters from waveguide A at the upper coupler, field 2
// (w2) from waveguide B at the lower coupler. Each field sees linear loss gamma
// and cross-TPA loss alpha * I_other, with I_other taken as uniform around the
// loop. The consistency condition for either field solves to
//
//     E_R = i R E_in / (1 - e^{i phi} e^{-(gamma + alpha I_other) L} T^2)
//
// and the coupled pair is found by alternating the two updates.

#include <array>
#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "zeno/model.hpp"

namespace zeno {

using cplx = std::complex<double>;

struct InputPowers {
    double P1_W = 0;  // field 1, waveguide A
    double P2_W = 0;  // field 2, waveguide B
};

// Powers leaving the device. 1A/2B continue along their input waveguide
// (through ports); 1B/2A are coupled across to the other waveguide (drop ports).
struct OutputPowers {
    double out_1A_W = 0;
    double out_1B_W = 0;
    double out_2A_W = 0;
    double out_2B_W = 0;
};

enum class Branch { field1_dominant, field2_dominant, symmetric };
std::string_view to_string(Branch b);

struct SteadySolution {
    double I1R_W = 0;
    double I2R_W = 0;
    cplx E1R;
    cplx E2R;
    Branch branch = Branch::symmetric;
    bool stable = true;
    double spectral_radius = 0;
    int iterations = 0;
    OutputPowers outputs;
};

struct SolverOptions {
    double tolerance = 1e-10;
    int max_iterations = 100000;
};

// Round-trip loop factor e^{i phi} e^{-(gamma + alpha I_other / A) L}.
cplx loop_factor(double other_power_W, double phi, const Device& dev);

// Propagation factor over half the loop (to the opposite coupler).
cplx half_loop_factor(double other_power_W, double phi, const Device& dev);

// Intracavity amplitude just after the input coupler for a given input
// amplitude and the other field's circulating power. Throws
// SingularResonanceError when the denominator vanishes (|.| < 1e-15).
cplx intracavity_response(cplx E_in, double other_power_W, double phi, const Device& dev);

// Iterates the two consistency equations from `seed_I2R_W`. Throws
// DivergenceError after `max_iterations`.
SteadySolution solve_fixed_point(InputPowers in, const Device& dev, double seed_I2R_W = 0.0,
                                 SolverOptions opts = {});

// Symmetric fixed point I1R = I2R for equal inputs and equal phases, by
// bracketing and bisection on the one-dimensional self-consistency.
SteadySolution find_symmetric_solution(double P_in_W, const Device& dev);

struct StabilityVerdict {
    bool stable = true;
    double spectral_radius = 0;
    // Row-major Jacobian of (I1R, I2R) -> (next I1R, next I2R).
    std::array<double, 4> jacobian{};
};

// One sweep of the iteration map: field 1 from I2R, then field 2 from the new I1R.
std::array<double, 2> iteration_map(std::array<double, 2> intensities, InputPowers in, const Device& dev);

StabilityVerdict classify_stability(const SteadySolution& sol, InputPowers in, const Device& dev);

OutputPowers output_fields(cplx E1R, cplx E2R, InputPowers in, const Device& dev);

struct CurvePoint {
    double assumed_W;
    double responding_W;
};

// Circulating power of the responding field (input power `P_in_W`, phase
// `phi`) versus an assumed circulating power of the other field.
std::vector<CurvePoint> response_curve(std::span<const double> assumed_W, double P_in_W, double phi,
                                       const Device& dev);

// Residual |E - rhs(E)| / |E| of one consistency equation (0 for E == 0).
double consistency_residual(cplx E_R, double P_in_W, double other_power_W, double phi, const Device& dev);

}  // namespace zeno
