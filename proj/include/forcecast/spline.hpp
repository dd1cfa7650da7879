#pragma once

#include <array>
#include <deque>
#include <utility>

#include "forcecast/wrench.hpp"

namespace forcecast {

// Uniform cubic B-spline basis at parameter u in [0,1]:
// (1/6) * (-u^3+3u^2-3u+1, 3u^3-6u^2+4, -3u^3+3u^2+3u+1, u^3).
// Weights sum to 1; throws std::invalid_argument outside [0,1].
std::array<double, 4> basis_weights(double u);

// Four most recent control wrenches, oldest first; the newest slot carries the
// one-step prediction so the segment can look ahead of the last physics sample.
struct SplineControlWindow {
    std::array<Wrench, 4> controls;
    double segment_start_t = 0.0; // ms
};

// Basis-weighted combination of the controls. The curve approximates rather
// than interpolates them (it need not pass through any control).
Wrench interpolate(const SplineControlWindow& window, double u);

// Interpolated samples per physics period: round(rate * period / 1000),
// clamped to [1, n_max]. Throws std::invalid_argument on non-positive input.
int compute_n(double haptic_rate_hz, double measured_physics_period_ms, int n_max);

// Haptic-side stepper: u = i/n for i in [0, n-1]; once i hits n-1 the value is
// held until a fresh physics sample restarts the segment.
struct UpsampleState {
    int n = 1;
    int i = 0;
    int n_max = 100;
};

std::pair<Wrench, UpsampleState> advance(const UpsampleState& state,
                                         const SplineControlWindow& window);

// Glue owned by the consumer loop: keeps the last three simulated wrenches,
// tracks a smoothed physics-period estimate, and rebuilds the control window
// (three simulated + one predicted) whenever a physics sample lands.
class StreamUpsampler {
public:
    StreamUpsampler(double haptic_rate_hz, int n_max);

    // Called per physics sample (with its one-step prediction); restarts the segment.
    void push_sample(const TimedWrench& simulated, const Wrench& predicted_next);

    // Called at the fixed haptic cadence. Before three simulated samples exist
    // the newest wrench passes through unmodified (warmup).
    Wrench tick();

    bool warmed_up() const { return have_window_; }
    int current_n() const { return state_.n; }
    // True when the last tick had to hold the end-of-segment value because the
    // physics side stalled past n emissions.
    bool starved() const { return starved_; }

private:
    double rate_hz_;
    std::deque<Wrench> recent_; // up to 3 newest simulated wrenches
    SplineControlWindow window_{};
    UpsampleState state_{};
    Wrench newest_{};
    double last_sample_t_ = 0.0;
    double period_est_ms_ = 0.0; // exponentially smoothed, factor 0.5
    bool have_sample_ = false;
    bool have_window_ = false;
    bool starved_ = false;
};

} // namespace forcecast
