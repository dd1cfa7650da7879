#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "forcecast/coupling.hpp"
#include "forcecast/rng.hpp"
#include "forcecast/trace_io.hpp"

namespace forcecast {

// Seeded bank of sinusoids with 1/sqrt(f) amplitude rolloff, scaled to a target
// RMS. Pure function of time, so signal content is independent of the sampling
// rate that observes it.
struct SinBank {
    std::vector<double> freq_hz, phase, amp;

    double value(double t_ms) const;
    double deriv(double t_ms) const; // per second

    static SinBank make(Rng& rng, int n, double fmin_hz, double fmax_hz, double rms);
};

// C1 Catmull-Rom track through seeded waypoints at fixed dwell spacing.
struct WanderTrack {
    std::vector<double> w;
    double dwell_ms = 700.0;

    // (position, velocity per second) at time t.
    std::pair<double, double> eval(double t_ms) const;

    static WanderTrack make(Rng& rng, double duration_ms, double dwell_ms, double amplitude);
};

// Time-parameterized device (haptic handle) state source.
class DeviceTrajectory {
public:
    virtual ~DeviceTrajectory() = default;
    virtual DeviceState state_at(double t_ms) const = 0;
};

// Handle parked at one pose (settling and equilibrium tests).
class FixedTrajectory : public DeviceTrajectory {
public:
    explicit FixedTrajectory(DeviceState s) : s_(std::move(s)) {}
    DeviceState state_at(double) const override { return s_; }

private:
    DeviceState s_;
};

// Seeded synthetic handle motion: per-axis waypoint wander plus hand tremor,
// pressed to a target depth through a smoothstep engagement ramp, with a small
// orientation wobble. All components carry analytic velocities.
class SyntheticTrajectory : public DeviceTrajectory {
public:
    SyntheticTrajectory(Rng& rng, double duration_ms, double press_depth_m, double ramp_ms);
    DeviceState state_at(double t_ms) const override;

private:
    WanderTrack x_, y_, z_;
    SinBank tremor_;       // m, on z
    SinBank rot_x_, rot_y_; // rad
    double depth_;
    double ramp_ms_;
};

// Linear interpolation over recorded samples; orientation via normalized lerp.
class CsvTrajectory : public DeviceTrajectory {
public:
    explicit CsvTrajectory(std::vector<TrajectorySample> rows);
    DeviceState state_at(double t_ms) const override;

private:
    std::vector<TrajectorySample> rows_;
};

// Piecewise-constant seeded contact-count walk.
struct CountSchedule {
    std::vector<std::pair<double, int>> events; // (start_ms, count), start times increasing

    int at(double t_ms) const;

    static CountSchedule constant(int count);
    // Count holds at `base` until walk_start_ms, jumps to `jump_to`, then walks
    // with steps of +/-(1..4) clamped to [lo, hi] at dwells of 100-400 ms.
    static CountSchedule walk(Rng& rng, double duration_ms, int base, double walk_start_ms,
                              int jump_to, int lo, int hi);
};

// Analytic penalty contact standing in for mesh collision: a flat surface with
// seeded roughness (and optionally a radial hole wall), with stiffness scaled
// by the live contact count.
struct ContactModel {
    bool enabled = false;
    double k_c = 2000.0;        // N/m at count_scale * count == 1
    double wall_z = -0.005;     // m
    double hole_radius = 0.0;   // m; > 0 confines the tool radially
    double count_scale = 0.05;  // per contact (1/20)
    SinBank roughness;          // m, surface height modulation

    Vec3 force(const Vec3& p_tool, int count, double t_ms) const;
};

struct Scenario {
    std::string name;
    double duration_ms = 7000.0;
    std::uint64_t seed = 1;
    double mass = 0.1;     // kg
    double inertia = 1e-4; // kg*m^2
    Vec3 gravity{0.0, 0.0, -9.81}; // m/s^2
    std::shared_ptr<const DeviceTrajectory> trajectory;
    ContactModel contact;
    CountSchedule counts;
    double base_period_ms = 7.0;
    double period_per_contact_ms = 0.55;

    // Physics-loop period law: more simultaneous contacts -> longer period.
    double physics_period_ms(double t_ms) const {
        return base_period_ms + period_per_contact_ms * counts.at(t_ms);
    }
};

// Built-in scenarios: "free_space", "peg_contact", "complex_contact".
// duration_ms <= 0 and mass <= 0 pick per-scenario defaults. Throws
// std::invalid_argument on an unknown name.
Scenario make_scenario(const std::string& name, std::uint64_t seed, double duration_ms = 0.0,
                       double mass = 0.0);

} // namespace forcecast
