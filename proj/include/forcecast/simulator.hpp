#pragma once

#include <array>
#include <iosfwd>
#include <utility>

#include "forcecast/predictor.hpp"
#include "forcecast/scenario.hpp"
#include "forcecast/spline.hpp"

namespace forcecast {

enum class Method { no_prediction, fixed_coefficients, adaptive_prediction };

struct SimConfig {
    Method method = Method::adaptive_prediction;
    int window_size = 300;
    int refit_interval = 1; // physics ticks between refits
    int order = 0;          // 0 = order selected from the data; > 0 pins it
    PredictorConfig predictor{};
    CouplingParams coupling{}; // gains re-adapted to the scenario's mass/inertia
    double haptic_rate_hz = 1000.0;
    int n_max = 100;
    // > 0 pins the physics period (1.0 = the continuous reference; 0.5 = the
    // refinement check), overriding the scenario's contact-count law.
    double forced_physics_period_ms = 0.0;
    std::ostream* coef_dump = nullptr; // per-refit coefficient CSV rows when set
};

struct RunRecord {
    Trace haptic;     // constant-cadence displayed stream
    Trace physics;    // variable-rate simulated (displayed-wrench) stream
    Trace prediction; // one-step predictions, stamped at their target times
    std::vector<MetaRow> meta;
    int starvation_ticks = 0;              // haptic ticks that held past segment end
    std::array<long, 6> degenerate_refits{}; // per-axis count of held (degenerate) refits
};

// Advances the tool from t_start over dt and returns the post-step state plus
// the wrench destined for the device (saturated coupling wrench at t_start+dt).
// The tool receives the reaction -F of the displayed wrench F, plus contact
// penalty and gravity. Integration: semi-implicit Euler at substeps <= 0.5 ms,
// device state re-evaluated per substep (held at `dev` when the scenario has
// no trajectory).
std::pair<ToolState, Wrench> step_physics(const Scenario& scenario, ToolState tool,
                                          const DeviceState& dev, double dt_ms,
                                          double t_start_ms, const CouplingParams& params);

// Executes physics / prediction / haptic loops on a virtual clock (ties
// dispatch physics, then prediction, then haptic). Deterministic per
// (scenario, seed, config).
RunRecord run(const Scenario& scenario, const SimConfig& config);

// Same scenario replayed through the zero-order-hold baseline, the frozen
// default-coefficient spline pipeline, and the fully adaptive pipeline, in
// that order. Physics-side inputs are identical across the three.
std::array<RunRecord, 3> run_comparison(const Scenario& scenario, const SimConfig& config);

// The wrench stream the haptic loop would see with the physics loop at the
// haptic rate (no rate drop): the accuracy reference for RMS metrics.
Trace reference_oracle(const Scenario& scenario, const SimConfig& config);

} // namespace forcecast
