#include "forcecast/metrics.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace forcecast {

namespace {

constexpr double kTimelineTolMs = 1e-9;

void require_shared_timeline(const Trace& a, const Trace& b) {
    if (a.samples.empty() || a.samples.size() != b.samples.size())
        throw std::invalid_argument("traces must share a non-empty timeline");
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        if (std::abs(a.samples[i].t_ms - b.samples[i].t_ms) > kTimelineTolMs)
            throw std::invalid_argument("trace timestamps do not line up");
    }
}

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

} // namespace

double rms_error(const Trace& candidate, const Trace& reference) {
    require_shared_timeline(candidate, reference);
    double acc = 0.0;
    for (std::size_t i = 0; i < candidate.samples.size(); ++i)
        acc += (candidate.samples[i].wrench.force - reference.samples[i].wrench.force).norm2();
    return std::sqrt(acc / static_cast<double>(candidate.samples.size()));
}

double rms_torque_error(const Trace& candidate, const Trace& reference) {
    require_shared_timeline(candidate, reference);
    double acc = 0.0;
    for (std::size_t i = 0; i < candidate.samples.size(); ++i)
        acc += (candidate.samples[i].wrench.torque - reference.samples[i].wrench.torque).norm2();
    return std::sqrt(acc / static_cast<double>(candidate.samples.size()));
}

std::vector<double> squared_force_errors(const Trace& candidate, const Trace& reference) {
    require_shared_timeline(candidate, reference);
    std::vector<double> out;
    out.reserve(candidate.samples.size());
    for (std::size_t i = 0; i < candidate.samples.size(); ++i)
        out.push_back(
            (candidate.samples[i].wrench.force - reference.samples[i].wrench.force).norm2());
    return out;
}

std::pair<double, double> smoothness_metrics(const Trace& trace) {
    const auto& s = trace.samples;
    if (s.size() < 3) throw std::invalid_argument("smoothness needs at least 3 samples");
    double max_jump = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i)
        max_jump = std::max(max_jump, (s[i].wrench.force - s[i - 1].wrench.force).norm());
    double jerk_acc = 0.0;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        const double dt1 = s[i].t_ms - s[i - 1].t_ms;
        const double dt2 = s[i + 1].t_ms - s[i].t_ms;
        const Vec3 second = s[i + 1].wrench.force - 2.0 * s[i].wrench.force +
                            s[i - 1].wrench.force;
        jerk_acc += second.norm() / (dt1 * dt2);
    }
    return {max_jump, jerk_acc / static_cast<double>(s.size() - 2)};
}

double anova_f(std::span<const double> group_a, std::span<const double> group_b) {
    if (group_a.size() < 2 || group_b.size() < 2)
        throw std::invalid_argument("each group needs at least 2 values");
    const double na = static_cast<double>(group_a.size());
    const double nb = static_cast<double>(group_b.size());
    const double ma = mean_of(group_a);
    const double mb = mean_of(group_b);
    const double grand = (na * ma + nb * mb) / (na + nb);
    const double ss_between = na * (ma - grand) * (ma - grand) + nb * (mb - grand) * (mb - grand);
    double ss_within = 0.0;
    for (double x : group_a) ss_within += (x - ma) * (x - ma);
    for (double x : group_b) ss_within += (x - mb) * (x - mb);
    if (ss_within == 0.0)
        return ss_between > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    const double df_within = na + nb - 2.0;
    return ss_between / (ss_within / df_within);
}

Trace resample_zoh(const Trace& trace, double t0_ms, double t1_ms, double step_ms) {
    if (trace.samples.empty()) throw std::invalid_argument("cannot resample an empty trace");
    if (step_ms <= 0.0) throw std::invalid_argument("resample step must be > 0");
    if (trace.samples.front().t_ms > t0_ms + kTimelineTolMs)
        throw std::invalid_argument("trace starts after the requested grid");
    Trace out;
    out.scenario = trace.scenario;
    out.nominal_rate_hz = 1000.0 / step_ms;
    std::size_t i = 0;
    for (long k = 0;; ++k) {
        const double t = t0_ms + static_cast<double>(k) * step_ms;
        if (t >= t1_ms) break;
        while (i + 1 < trace.samples.size() &&
               trace.samples[i + 1].t_ms <= t + kTimelineTolMs)
            ++i;
        out.append({t, trace.samples[i].wrench});
    }
    return out;
}

Trace slice_trace(const Trace& trace, double t0_ms, double t1_ms) {
    Trace out;
    out.scenario = trace.scenario;
    out.nominal_rate_hz = trace.nominal_rate_hz;
    for (const TimedWrench& s : trace.samples) {
        if (s.t_ms >= t0_ms && s.t_ms < t1_ms) out.append(s);
    }
    return out;
}

MetricReport compute_metric_report(const Trace& candidate, const Trace& reference) {
    MetricReport r;
    r.rms_force_error = rms_error(candidate, reference);
    r.rms_torque_error = rms_torque_error(candidate, reference);
    const auto [jump, jerk] = smoothness_metrics(candidate);
    r.max_interframe_jump = jump;
    r.mean_abs_jerk = jerk;
    return r;
}

} // namespace forcecast
