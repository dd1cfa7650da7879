#pragma once

#include <utility>

#include "forcecast/wrench.hpp"

namespace forcecast {

// Haptic handle pose/velocity in the virtual workspace.
struct DeviceState {
    Vec3 P_HIP;  // m
    Vec3 V_HIP;  // m/s
    Quat U_HIP;  // unit
    Vec3 W_HIP;  // rad/s
};

// Simulated tool the device drags through the scene.
struct ToolState {
    Vec3 P_tool;  // m
    Vec3 V_tool;  // m/s
    Quat U_tool;  // unit
    Vec3 W_tool;  // rad/s
    double m = 0.1;    // kg, > 0
    double I = 1e-4;   // kg*m^2 (scalar moment), > 0
};

// standard_damper opposes relative motion (-spring -damper); inverted_damper
// flips the damper term's sign (+damper), kept selectable for comparison runs.
enum class SignMode { standard_damper, inverted_damper };

struct CouplingParams {
    double k_t = 500.0;       // N/m
    double b_t = 14.142135623730951; // N*s/m (critical damping at k=500, m=0.1)
    double k_rot = 2.0;       // N*m/rad
    double b_rot = 0.028284271247461905; // N*m*s/rad (critical at k_rot=2, I=1e-4)
    double f_max = 8.5;       // N, device force cap
    double t_max = 0.5;       // N*m, device torque cap
    double zeta = 1.0;        // damping ratio
    double k_ref = 500.0;     // base translational stiffness
    double k_rot_ref = 2.0;   // base rotational stiffness
    SignMode sign_mode = SignMode::standard_damper;
};

// Stiffness stays at the device budget k_ref regardless of mass; damping is
// critical for that stiffness: b = 2 * zeta * sqrt(k * m).
std::pair<double, double> adapt_translational(double mass, const CouplingParams& params);
std::pair<double, double> adapt_rotational(double inertia, const CouplingParams& params);

// Fills k_t/b_t/k_rot/b_rot for the given tool mass and inertia.
CouplingParams adapt_params(double mass, double inertia, CouplingParams params);

// F = -k_t (P_HIP - P_tool) -/+ b_t (V_HIP - V_tool), damper sign per mode.
Vec3 coupling_force(const DeviceState& dev, const ToolState& tool, const CouplingParams& params);

// T = -k_rot * rotation_vector_between(U_HIP, U_tool) -/+ b_rot (W_HIP - W_tool).
Vec3 coupling_torque(const DeviceState& dev, const ToolState& tool, const CouplingParams& params);

Wrench coupling_wrench(const DeviceState& dev, const ToolState& tool, const CouplingParams& params);

// Norm-clamps force to f_max and torque to t_max independently, preserving direction.
Wrench saturate(const Wrench& w, const CouplingParams& params);

} // namespace forcecast
