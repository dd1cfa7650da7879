#include "forcecast/simulator.hpp"

#include <cmath>
#include <stdexcept>

#include "forcecast/coupling.hpp"

namespace forcecast {

namespace {

constexpr double kSubstepMs = 0.5;

ToolState tool_from_device(const DeviceState& dev, double mass, double inertia) {
    ToolState tool;
    tool.P_tool = dev.P_HIP;
    tool.V_tool = dev.V_HIP;
    tool.U_tool = dev.U_HIP;
    tool.W_tool = dev.W_HIP;
    tool.m = mass;
    tool.I = inertia;
    return tool;
}

DeviceState device_at(const Scenario& scenario, const DeviceState& fallback, double t_ms) {
    return scenario.trajectory ? scenario.trajectory->state_at(t_ms) : fallback;
}

} // namespace

std::pair<ToolState, Wrench> step_physics(const Scenario& scenario, ToolState tool,
                                          const DeviceState& dev, double dt_ms,
                                          double t_start_ms, const CouplingParams& params) {
    if (dt_ms < 0.0) throw std::invalid_argument("physics step must be non-negative");
    const int substeps = static_cast<int>(std::ceil(dt_ms / kSubstepMs));
    const double h_ms = substeps > 0 ? dt_ms / substeps : 0.0;
    const double h_s = h_ms * 1e-3;
    double t = t_start_ms;
    for (int i = 0; i < substeps; ++i) {
        const DeviceState d = device_at(scenario, dev, t);
        const Wrench f = coupling_wrench(d, tool, params);
        const Vec3 contact = scenario.contact.force(tool.P_tool, scenario.counts.at(t), t);
        const Vec3 accel = (1.0 / tool.m) * (-f.force + contact) + scenario.gravity;
        tool.V_tool += h_s * accel;
        tool.P_tool += h_s * tool.V_tool;
        const Vec3 ang_accel = (1.0 / tool.I) * (-f.torque);
        tool.W_tool += h_s * ang_accel;
        tool.U_tool = (quat_from_rotation_vector(h_s * tool.W_tool) * tool.U_tool).normalized();
        t += h_ms;
    }
    const double t_end = t_start_ms + dt_ms;
    const DeviceState d_end = device_at(scenario, dev, t_end);
    const Wrench displayed = saturate(coupling_wrench(d_end, tool, params), params);
    return {tool, displayed};
}

RunRecord run(const Scenario& scenario, const SimConfig& config) {
    if (!scenario.trajectory) throw std::invalid_argument("scenario has no device trajectory");
    if (config.haptic_rate_hz <= 0.0) throw std::invalid_argument("haptic rate must be > 0");

    const CouplingParams params = adapt_params(scenario.mass, scenario.inertia, config.coupling);
    const DeviceState dev0 = scenario.trajectory->state_at(0.0);
    ToolState tool = tool_from_device(dev0, scenario.mass, scenario.inertia);

    const bool predicts = config.method != Method::no_prediction;
    ArModel model(config.window_size, config.refit_interval, config.predictor, config.order);
    if (config.method == Method::fixed_coefficients) model.disable_refit();
    if (config.coef_dump != nullptr) model.set_dump_stream(config.coef_dump);
    StreamUpsampler upsampler(config.haptic_rate_hz, config.n_max);

    RunRecord rec;
    rec.physics.scenario = scenario.name;
    rec.haptic.scenario = scenario.name;
    rec.prediction.scenario = scenario.name;
    rec.haptic.nominal_rate_hz = config.haptic_rate_hz;

    const double haptic_step_ms = 1000.0 / config.haptic_rate_hz;
    double physics_t = 0.0;
    double last_physics_t = 0.0;
    long haptic_idx = 0;
    Wrench last_displayed;

    while (true) {
        const double haptic_t = static_cast<double>(haptic_idx) * haptic_step_ms;
        const bool physics_due = physics_t < scenario.duration_ms;
        const bool haptic_due = haptic_t < scenario.duration_ms;
        if (!physics_due && !haptic_due) break;

        if (physics_due && physics_t <= haptic_t) {
            // Physics tick (and, chained behind it, the prediction update).
            const double t = physics_t;
            auto [next_tool, displayed] =
                step_physics(scenario, tool, dev0, t - last_physics_t, last_physics_t, params);
            tool = next_tool;
            last_displayed = displayed;
            rec.physics.append({t, displayed});
            const DeviceState d = device_at(scenario, dev0, t);
            rec.meta.push_back({t, scenario.physics_period_ms(t), scenario.counts.at(t),
                                (tool.P_tool - d.P_HIP).norm()});

            const double period_ms = config.forced_physics_period_ms > 0.0
                                         ? config.forced_physics_period_ms
                                         : scenario.physics_period_ms(t);
            if (predicts) {
                const ArModel::RefitReport report = model.ingest({t, displayed});
                if (report.refit) {
                    for (int axis = 0; axis < 6; ++axis) {
                        if (report.degenerate[static_cast<std::size_t>(axis)])
                            ++rec.degenerate_refits[static_cast<std::size_t>(axis)];
                    }
                }
                const Wrench predicted = model.predict_next();
                rec.prediction.append({t + period_ms, predicted});
                upsampler.push_sample({t, displayed}, predicted);
            }

            last_physics_t = t;
            physics_t = t + period_ms;
            continue;
        }

        // Haptic tick.
        Wrench out;
        if (predicts) {
            const bool warmed = upsampler.warmed_up();
            out = saturate(upsampler.tick(), params);
            if (warmed && upsampler.starved()) ++rec.starvation_ticks;
        } else {
            out = last_displayed; // zero-order hold of the newest physics sample
        }
        rec.haptic.append({haptic_t, out});
        ++haptic_idx;
    }
    return rec;
}

std::array<RunRecord, 3> run_comparison(const Scenario& scenario, const SimConfig& config) {
    std::array<RunRecord, 3> out;
    const Method methods[3] = {Method::no_prediction, Method::fixed_coefficients,
                               Method::adaptive_prediction};
    for (int i = 0; i < 3; ++i) {
        SimConfig c = config;
        c.method = methods[i];
        c.coef_dump = nullptr;
        out[static_cast<std::size_t>(i)] = run(scenario, c);
    }
    return out;
}

Trace reference_oracle(const Scenario& scenario, const SimConfig& config) {
    SimConfig c = config;
    c.method = Method::no_prediction;
    c.forced_physics_period_ms = 1000.0 / config.haptic_rate_hz;
    c.coef_dump = nullptr;
    RunRecord rec = run(scenario, c);
    return std::move(rec.physics);
}

} // namespace forcecast
