#include "forcecast/spline.hpp"

#include <cmath>
#include <stdexcept>

namespace forcecast {

std::array<double, 4> basis_weights(double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw std::invalid_argument("spline parameter must be in [0,1]");
    double u2 = u * u;
    double u3 = u2 * u;
    return {(-u3 + 3.0 * u2 - 3.0 * u + 1.0) / 6.0,
            (3.0 * u3 - 6.0 * u2 + 4.0) / 6.0,
            (-3.0 * u3 + 3.0 * u2 + 3.0 * u + 1.0) / 6.0,
            u3 / 6.0};
}

Wrench interpolate(const SplineControlWindow& window, double u) {
    auto w = basis_weights(u);
    return wrench_linear_combine(w, window.controls);
}

int compute_n(double haptic_rate_hz, double measured_physics_period_ms, int n_max) {
    if (!(haptic_rate_hz > 0.0) || !(measured_physics_period_ms > 0.0) || n_max < 1)
        throw std::invalid_argument("rates and n_max must be positive");
    long n = std::lround(haptic_rate_hz * measured_physics_period_ms / 1000.0);
    if (n < 1) n = 1;
    if (n > n_max) n = n_max;
    return int(n);
}

std::pair<Wrench, UpsampleState> advance(const UpsampleState& state,
                                         const SplineControlWindow& window) {
    UpsampleState next = state;
    int i = state.i < state.n - 1 ? state.i : state.n - 1; // hold at (n-1)/n when starved
    Wrench out = interpolate(window, double(i) / double(state.n));
    if (next.i < next.n) ++next.i; // saturates one past n-1 so starvation is detectable
    return {out, next};
}

StreamUpsampler::StreamUpsampler(double haptic_rate_hz, int n_max) : rate_hz_(haptic_rate_hz) {
    if (!(haptic_rate_hz > 0.0) || n_max < 1)
        throw std::invalid_argument("rates and n_max must be positive");
    state_.n_max = n_max;
}

void StreamUpsampler::push_sample(const TimedWrench& simulated, const Wrench& predicted_next) {
    newest_ = simulated.wrench;
    if (have_sample_) {
        double dt = simulated.t_ms - last_sample_t_;
        if (dt > 0.0)
            period_est_ms_ = period_est_ms_ > 0.0 ? 0.5 * period_est_ms_ + 0.5 * dt : dt;
    }
    last_sample_t_ = simulated.t_ms;
    have_sample_ = true;

    recent_.push_back(simulated.wrench);
    if (recent_.size() > 3) recent_.pop_front();
    if (recent_.size() == 3) {
        window_ = {{recent_[0], recent_[1], recent_[2], predicted_next}, simulated.t_ms};
        int n = period_est_ms_ > 0.0 ? compute_n(rate_hz_, period_est_ms_, state_.n_max) : 1;
        state_ = {n, 0, state_.n_max};
        have_window_ = true;
        starved_ = false; // fresh segment
    }
}

Wrench StreamUpsampler::tick() {
    if (!have_window_) {
        starved_ = false;
        return newest_; // warmup passthrough
    }
    starved_ = state_.i >= state_.n;
    auto [out, next] = advance(state_, window_);
    state_ = next;
    return out;
}

} // namespace forcecast
