#pragma once

#include <span>
#include <string>
#include <vector>

#include "forcecast/geometry.hpp"

namespace forcecast {

struct Wrench {
    Vec3 force;  // N
    Vec3 torque; // N*m

    Wrench operator+(const Wrench& o) const { return {force + o.force, torque + o.torque}; }
    Wrench operator-(const Wrench& o) const { return {force - o.force, torque - o.torque}; }
    Wrench operator*(double s) const { return {force * s, torque * s}; }
};

struct TimedWrench {
    double t_ms = 0.0; // finite, non-negative
    Wrench wrench;
};

// Ordered sample sequence; timestamps strictly increasing (enforced by append/load).
struct Trace {
    std::vector<TimedWrench> samples;
    std::string scenario;
    double nominal_rate_hz = 0.0;

    void append(const TimedWrench& s);
    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
};

// Component-wise weighted sum; shared kernel for prediction and spline evaluation.
Wrench wrench_linear_combine(std::span<const double> coeffs, std::span<const Wrench> wrenches);

} // namespace forcecast
