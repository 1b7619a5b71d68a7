#pragma once

// Time-domain model at round-trip granularity.
//
// One complex amplitude per field is kept just after its input coupler. Every
// step of length dt (one transit of the loop) maps
//
//     a_i <- T^2 e^{i phi_i} e^{-gamma L} e^{-alpha I_other L} a_i + i R E_in,i(t + dt)
//
// with I_other taken from the current step. Port outputs are formed from the
// pre-update amplitudes and the new inputs, so each coupler acts as a lossless
// beam splitter and the bookkeeping is exactly passive.

#include <optional>
#include <vector>

#include "zeno/quasistatic.hpp"

namespace zeno {

struct CavityState {
    cplx a1;
    cplx a2;
};

enum class EdgeShape { constant, raised_cosine };

// A level change at `start_s`. The level holds until the next segment.
struct DriveSegment {
    double start_s = 0;
    EdgeShape shape = EdgeShape::raised_cosine;
    double level_W = 0;
    double rise_s = 10e-12;
};

// Piecewise input power for one port/frequency pair; zero before the first segment.
class DriveChannel {
public:
    DriveChannel() = default;
    // Throws std::invalid_argument when segments overlap or levels are negative.
    explicit DriveChannel(std::vector<DriveSegment> segments);

    double power_at(double t_s) const;
    const std::vector<DriveSegment>& segments() const { return segments_; }

    static DriveChannel constant(double level_W, double start_s = 0.0, double rise_s = 10e-12);
    // On at `on_s`, off at `off_s`.
    static DriveChannel pulse(double level_W, double on_s, double off_s, double rise_s = 10e-12);

private:
    std::vector<DriveSegment> segments_;
};

struct DriveSignal {
    DriveChannel field1;  // w1 into waveguide A
    DriveChannel field2;  // w2 into waveguide B

    InputPowers at(double t_s) const { return {field1.power_at(t_s), field2.power_at(t_s)}; }
};

struct StepResult {
    CavityState state;
    OutputPowers outputs;
};

StepResult step(const CavityState& state, InputPowers next_inputs, const Device& dev);

// Sampled channels; sample k is at time[k] = (k + 1) dt.
struct TimeSeries {
    double dt = 0;
    std::vector<double> time_s;
    std::vector<double> I1R_W;
    std::vector<double> I2R_W;
    std::vector<double> out_1A_W;
    std::vector<double> out_1B_W;
    std::vector<double> out_2A_W;
    std::vector<double> out_2B_W;
    std::vector<double> in_1_W;
    std::vector<double> in_2_W;
    double initial_stored_J = 0;

    std::size_t size() const { return time_s.size(); }
};

// Runs ceil(duration / dt) steps. Throws EmptyRunError when duration < dt.
TimeSeries simulate(const DriveSignal& drive, double duration_s, const Device& dev, CavityState initial = {});

// Worst-case excess of cumulative output energy over cumulative input plus
// initial stored energy across all prefixes (<= 0 for a passive run).
double max_passivity_excess_J(const TimeSeries& ts);

struct SwitchingTimes {
    double on_latency_s;
    double off_latency_s;
};

// Control is field 1, the target is field 2. On-latency: first crossing of
// threshold * plateau by the transmitted target (out_2B) after `control_on_s`;
// off-latency: same for the reflected target (out_2A) after `control_off_s`.
// Plateaus are the mean of the final 10% of samples in each interval.
// Throws NotSwitchedError when no upward crossing exists or a plateau holds
// less than half of the target input over the same window.
SwitchingTimes switching_times(const TimeSeries& ts, double control_on_s, double control_off_s,
                               double threshold_fraction = 0.9);

struct MemoryEvent {
    double time_s;
    int bit;  // 0: field 1 dominant, 1: field 2 dominant
};

struct MemorySchedule {
    double hold_power_W = 3.7e-4;
    // Input of the losing field is held at zero for this long after each event.
    double gate_s = 1e-9;
    double rise_s = 10e-12;
    double duration_s = 10e-9;
    double settle_window_s = 2e-9;
    std::vector<MemoryEvent> events;
};

struct MemoryTrace {
    TimeSeries series;
    DriveSignal drive;
    // Per sample: 0, 1, or -1 when ambiguous (|I1R - I2R| < 1% of the larger).
    std::vector<int> bits;
};

DriveSignal memory_drive(const MemorySchedule& schedule);

// Throws IndeterminateStateError if the state stays ambiguous longer than the
// settling window (counted from the first event, or from t = 0 without events).
MemoryTrace memory_sequence(const MemorySchedule& schedule, const Device& dev);

int bit_state(double I1R_W, double I2R_W);

}  // namespace zeno
