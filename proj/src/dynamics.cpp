#include "zeno/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "zeno/errors.hpp"

namespace zeno {
namespace {

constexpr cplx kI{0.0, 1.0};

double raised_cosine(double x) { return 0.5 * (1.0 - std::cos(std::numbers::pi * x)); }

}  // namespace

DriveChannel::DriveChannel(std::vector<DriveSegment> segments) : segments_(std::move(segments)) {
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto& s = segments_[i];
        if (!(s.level_W >= 0.0)) throw std::invalid_argument("drive levels must be >= 0");
        if (!(s.rise_s >= 0.0)) throw std::invalid_argument("drive rise times must be >= 0");
        if (!(s.start_s >= 0.0)) throw std::invalid_argument("drive segments must start at t >= 0");
        if (i + 1 < segments_.size()) {
            const double next = segments_[i + 1].start_s;
            const double edge = s.shape == EdgeShape::raised_cosine ? s.rise_s : 0.0;
            if (!(next > s.start_s) || next - s.start_s < edge)
                throw std::invalid_argument("drive segments overlap");
        }
    }
}

double DriveChannel::power_at(double t_s) const {
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t_s,
                               [](double t, const DriveSegment& s) { return t < s.start_s; });
    if (it == segments_.begin()) return 0.0;
    const auto& seg = *std::prev(it);
    const double prev = std::prev(it) == segments_.begin() ? 0.0 : std::prev(it, 2)->level_W;
    const double x = t_s - seg.start_s;
    if (seg.shape == EdgeShape::raised_cosine && seg.rise_s > 0.0 && x < seg.rise_s)
        return prev + (seg.level_W - prev) * raised_cosine(x / seg.rise_s);
    return seg.level_W;
}

DriveChannel DriveChannel::constant(double level_W, double start_s, double rise_s) {
    return DriveChannel({{start_s, EdgeShape::raised_cosine, level_W, rise_s}});
}

DriveChannel DriveChannel::pulse(double level_W, double on_s, double off_s, double rise_s) {
    return DriveChannel({{on_s, EdgeShape::raised_cosine, level_W, rise_s},
                         {off_s, EdgeShape::raised_cosine, 0.0, rise_s}});
}

StepResult step(const CavityState& state, InputPowers next_inputs, const Device& dev) {
    const auto& res = dev.resonator();
    const double T = dev.T();
    const double R = dev.R();
    const double I1 = std::norm(state.a1);
    const double I2 = std::norm(state.a2);
    const double e1 = std::sqrt(next_inputs.P1_W);
    const double e2 = std::sqrt(next_inputs.P2_W);

    // Fields arriving back at their input couplers after one transit.
    const cplx back1 = T * loop_factor(I2, res.phi1_rad, dev) * state.a1;
    const cplx back2 = T * loop_factor(I1, res.phi2_rad, dev) * state.a2;

    StepResult r;
    r.state.a1 = T * back1 + kI * R * e1;
    r.state.a2 = T * back2 + kI * R * e2;
    r.outputs.out_1A_W = std::norm(T * e1 + kI * R * back1);
    r.outputs.out_2B_W = std::norm(T * e2 + kI * R * back2);
    r.outputs.out_1B_W = std::norm(kI * R * half_loop_factor(I2, res.phi1_rad, dev) * state.a1);
    r.outputs.out_2A_W = std::norm(kI * R * half_loop_factor(I1, res.phi2_rad, dev) * state.a2);
    return r;
}

TimeSeries simulate(const DriveSignal& drive, double duration_s, const Device& dev, CavityState initial) {
    const double dt = dev.dt_s();
    if (!(duration_s >= dt)) {
        std::ostringstream msg;
        msg << "run duration " << duration_s << " s is shorter than one round trip (" << dt << " s)";
        throw EmptyRunError(msg.str());
    }
    const auto steps = static_cast<std::size_t>(std::ceil(duration_s / dt * (1.0 - 1e-12)));

    TimeSeries ts;
    ts.dt = dt;
    for (auto* v : {&ts.time_s, &ts.I1R_W, &ts.I2R_W, &ts.out_1A_W, &ts.out_1B_W, &ts.out_2A_W, &ts.out_2B_W,
                    &ts.in_1_W, &ts.in_2_W})
        v->reserve(steps);
    ts.initial_stored_J = (std::norm(initial.a1) + std::norm(initial.a2)) * dt;

    CavityState state = initial;
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k + 1) * dt;
        const InputPowers in = drive.at(t);
        const auto r = step(state, in, dev);
        state = r.state;
        ts.time_s.push_back(t);
        ts.I1R_W.push_back(std::norm(state.a1));
        ts.I2R_W.push_back(std::norm(state.a2));
        ts.out_1A_W.push_back(r.outputs.out_1A_W);
        ts.out_1B_W.push_back(r.outputs.out_1B_W);
        ts.out_2A_W.push_back(r.outputs.out_2A_W);
        ts.out_2B_W.push_back(r.outputs.out_2B_W);
        ts.in_1_W.push_back(in.P1_W);
        ts.in_2_W.push_back(in.P2_W);
    }
    return ts;
}

double max_passivity_excess_J(const TimeSeries& ts) {
    double in = ts.initial_stored_J;
    double out = 0.0;
    double worst = -in;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        in += (ts.in_1_W[k] + ts.in_2_W[k]) * ts.dt;
        out += (ts.out_1A_W[k] + ts.out_1B_W[k] + ts.out_2A_W[k] + ts.out_2B_W[k]) * ts.dt;
        worst = std::max(worst, out - in);
    }
    return worst;
}

namespace {

// First upward crossing of threshold * plateau in [t0, t1); returns latency from t0.
// The plateau must carry at least half of the target input, otherwise the
// control only dented the routing and the switch did not happen.
double crossing_latency(const TimeSeries& ts, const std::vector<double>& channel, double t0, double t1,
                        double threshold_fraction, const char* what) {
    const auto first = std::lower_bound(ts.time_s.begin(), ts.time_s.end(), t0) - ts.time_s.begin();
    const auto last = std::lower_bound(ts.time_s.begin(), ts.time_s.end(), t1) - ts.time_s.begin();
    if (last <= first) throw NotSwitchedError(std::string("no samples in the ") + what + " interval");

    const auto n = last - first;
    const auto tail = std::max<std::ptrdiff_t>(1, n / 10);
    const auto mean = [&](const std::vector<double>& v) {
        return std::accumulate(v.begin() + (last - tail), v.begin() + last, 0.0) / static_cast<double>(tail);
    };
    const double plateau = mean(channel);
    const double target_in = mean(ts.in_2_W);
    if (!(plateau > 0.0) || plateau < 0.5 * target_in) {
        std::ostringstream msg;
        msg << "target plateau after the control " << what << " edge carries " << plateau << " W of " << target_in
            << " W input; not switched";
        throw NotSwitchedError(msg.str());
    }
    const double threshold = threshold_fraction * plateau;

    bool seen_below = false;
    for (auto k = first; k < last; ++k) {
        if (channel[k] < threshold) {
            seen_below = true;
        } else if (seen_below) {
            return ts.time_s[k] - t0;
        }
    }
    throw NotSwitchedError(std::string("target never crossed ") + std::to_string(threshold_fraction) +
                           " of its plateau after the control " + what + " edge");
}

}  // namespace

SwitchingTimes switching_times(const TimeSeries& ts, double control_on_s, double control_off_s,
                               double threshold_fraction) {
    if (!(control_off_s > control_on_s)) throw std::invalid_argument("control off-edge must follow the on-edge");
    const double end = ts.time_s.empty() ? 0.0 : ts.time_s.back() + ts.dt;
    return {crossing_latency(ts, ts.out_2B_W, control_on_s, control_off_s, threshold_fraction, "on"),
            crossing_latency(ts, ts.out_2A_W, control_off_s, end, threshold_fraction, "off")};
}

int bit_state(double I1R_W, double I2R_W) {
    const double m = std::max(I1R_W, I2R_W);
    if (!(m > 0.0) || std::abs(I1R_W - I2R_W) < 0.01 * m) return -1;
    return I1R_W > I2R_W ? 0 : 1;
}

DriveSignal memory_drive(const MemorySchedule& schedule) {
    auto events = schedule.events;
    std::stable_sort(events.begin(), events.end(),
                     [](const MemoryEvent& a, const MemoryEvent& b) { return a.time_s < b.time_s; });
    const double t_first = events.empty() ? 0.0 : events.front().time_s;

    // Field 1 loses (is gated off) when writing a 1, field 2 when writing a 0.
    const auto is_on = [&](int field, double t) {
        if (t < t_first) return false;
        for (const auto& e : events) {
            const int loser = e.bit == 0 ? 2 : 1;
            if (loser == field && t >= e.time_s && t < e.time_s + schedule.gate_s) return false;
        }
        return true;
    };

    std::set<double> transitions{t_first};
    for (const auto& e : events) {
        transitions.insert(e.time_s);
        transitions.insert(e.time_s + schedule.gate_s);
    }

    DriveSignal drive;
    for (int field : {1, 2}) {
        std::vector<DriveSegment> segs;
        bool on = false;
        for (double t : transitions) {
            const bool now = is_on(field, t);
            if (now == on) continue;
            segs.push_back({t, EdgeShape::raised_cosine, now ? schedule.hold_power_W : 0.0, schedule.rise_s});
            on = now;
        }
        (field == 1 ? drive.field1 : drive.field2) = DriveChannel(std::move(segs));
    }
    return drive;
}

MemoryTrace memory_sequence(const MemorySchedule& schedule, const Device& dev) {
    for (const auto& e : schedule.events)
        if (e.bit != 0 && e.bit != 1) throw std::invalid_argument("memory events must write 0 or 1");

    MemoryTrace trace;
    trace.drive = memory_drive(schedule);
    trace.series = simulate(trace.drive, schedule.duration_s, dev);
    const auto& ts = trace.series;

    trace.bits.resize(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) trace.bits[k] = bit_state(ts.I1R_W[k], ts.I2R_W[k]);

    double t_first = 0.0;
    if (!schedule.events.empty()) {
        t_first = std::min_element(schedule.events.begin(), schedule.events.end(),
                                   [](const MemoryEvent& a, const MemoryEvent& b) { return a.time_s < b.time_s; })
                      ->time_s;
    }
    double run = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (ts.time_s[k] < t_first) continue;
        run = trace.bits[k] < 0 ? run + ts.dt : 0.0;
        if (run > schedule.settle_window_s) {
            std::ostringstream msg;
            msg << "memory state indeterminate for more than " << schedule.settle_window_s << " s (at t = "
                << ts.time_s[k] << " s)";
            throw IndeterminateStateError(msg.str());
        }
    }
    return trace;
}

}  // namespace zeno
