#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "forcecast/wrench.hpp"

namespace forcecast {

struct MetricReport {
    double rms_force_error = 0.0;   // N
    double rms_torque_error = 0.0;  // N*m
    double max_interframe_jump = 0.0; // N, max force step between samples
    double mean_abs_jerk = 0.0;       // N/ms^2, mean second-difference magnitude
    std::optional<double> anova_f;    // only filled by group comparisons
};

// Root-mean-square force-vector error between two traces on the same timeline
// (pairwise timestamps within 1e-9 ms; same length; >= 1 sample). Callers
// resample first when timelines differ.
double rms_error(const Trace& candidate, const Trace& reference);
double rms_torque_error(const Trace& candidate, const Trace& reference);

// Per-sample squared force-vector errors on a shared timeline (ANOVA input).
std::vector<double> squared_force_errors(const Trace& candidate, const Trace& reference);

// (max inter-sample force jump, mean ||second difference|| / dt^2) over a
// trace of >= 3 samples.
std::pair<double, double> smoothness_metrics(const Trace& trace);

// One-way F statistic for two groups (each >= 2 values). Zero within-group
// variance yields +inf when the means differ and 0 when they do not.
double anova_f(std::span<const double> group_a, std::span<const double> group_b);

// Zero-order-hold resample onto the grid t0, t0+step, ... (< t1). The trace
// must start at or before t0.
Trace resample_zoh(const Trace& trace, double t0_ms, double t1_ms, double step_ms = 1.0);

// Samples with t0 <= t < t1.
Trace slice_trace(const Trace& trace, double t0_ms, double t1_ms);

MetricReport compute_metric_report(const Trace& candidate, const Trace& reference);

} // namespace forcecast
