#include "forcecast/coupling.hpp"

#include <cmath>
#include <stdexcept>

namespace forcecast {

std::pair<double, double> adapt_translational(double mass, const CouplingParams& params) {
    if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
    double k = params.k_ref;
    double b = 2.0 * params.zeta * std::sqrt(k * mass);
    return {k, b};
}

std::pair<double, double> adapt_rotational(double inertia, const CouplingParams& params) {
    if (!(inertia > 0.0)) throw std::invalid_argument("inertia must be positive");
    double k = params.k_rot_ref;
    double b = 2.0 * params.zeta * std::sqrt(k * inertia);
    return {k, b};
}

CouplingParams adapt_params(double mass, double inertia, CouplingParams params) {
    auto [kt, bt] = adapt_translational(mass, params);
    auto [kr, br] = adapt_rotational(inertia, params);
    params.k_t = kt;
    params.b_t = bt;
    params.k_rot = kr;
    params.b_rot = br;
    return params;
}

Vec3 coupling_force(const DeviceState& dev, const ToolState& tool, const CouplingParams& params) {
    Vec3 spring = (dev.P_HIP - tool.P_tool) * -params.k_t;
    Vec3 damper = (dev.V_HIP - tool.V_tool) * params.b_t;
    return params.sign_mode == SignMode::standard_damper ? spring - damper : spring + damper;
}

Vec3 coupling_torque(const DeviceState& dev, const ToolState& tool, const CouplingParams& params) {
    Vec3 spring = rotation_vector_between(dev.U_HIP, tool.U_tool) * -params.k_rot;
    Vec3 damper = (dev.W_HIP - tool.W_tool) * params.b_rot;
    return params.sign_mode == SignMode::standard_damper ? spring - damper : spring + damper;
}

Wrench coupling_wrench(const DeviceState& dev, const ToolState& tool, const CouplingParams& params) {
    return {coupling_force(dev, tool, params), coupling_torque(dev, tool, params)};
}

namespace {
Vec3 clamp_norm(const Vec3& v, double cap) {
    double n = v.norm();
    if (n <= cap || n == 0.0) return v;
    return v * (cap / n);
}
} // namespace

Wrench saturate(const Wrench& w, const CouplingParams& params) {
    return {clamp_norm(w.force, params.f_max), clamp_norm(w.torque, params.t_max)};
}

} // namespace forcecast
