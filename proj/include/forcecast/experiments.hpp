#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "forcecast/metrics.hpp"
#include "forcecast/simulator.hpp"

namespace forcecast {

// Both experiments score one-step prediction accuracy: the predicted stream
// (held onto the haptic-rate grid) against the full-rate reference, with the
// fill-in/transient head trimmed. Scoring the displayed haptic stream instead
// would bury the predictor differences under the interpolation floor shared
// by every method.

struct SweepSettings {
    std::string scenario = "complex_contact";
    std::uint64_t seed = 7;
    double duration_ms = 60000.0;
    double trim_ms = 12000.0;
    std::vector<int> sizes{100, 200, 300, 400, 500};
};

struct SweepRow {
    int window_size = 0;
    double rms = 0.0;
};

std::vector<SweepRow> sweep_window(const SweepSettings& settings, const SimConfig& base);

struct AbSettings {
    std::string scenario = "peg_contact";
    std::uint64_t first_seed = 100;
    int num_seeds = 20;
    double duration_ms = 12000.0;
    double trim_ms = 4000.0;
};

struct AbRow {
    std::uint64_t seed = 0;
    double rms_fixed = 0.0;
    double rms_adaptive = 0.0;
    double f_value = 0.0; // per-seed F over squared per-sample errors
};

struct AbResult {
    std::vector<AbRow> rows;
    double pooled_f = 0.0; // F over all seeds' squared errors pooled per group
    int adaptive_wins = 0; // seeds where adaptive RMS < fixed RMS
};

AbResult ab_update(const AbSettings& settings, const SimConfig& base);

// Prediction trace held onto the 1 kHz grid over [trim, duration), paired
// with the same slice of the full-rate reference.
std::pair<Trace, Trace> prediction_vs_reference(const Scenario& scenario, const SimConfig& config,
                                                const Trace& oracle, double trim_ms);

} // namespace forcecast
