#include "forcecast/experiments.hpp"

#include <stdexcept>

namespace forcecast {

std::pair<Trace, Trace> prediction_vs_reference(const Scenario& scenario, const SimConfig& config,
                                                const Trace& oracle, double trim_ms) {
    const RunRecord rec = run(scenario, config);
    if (rec.prediction.samples.empty())
        throw std::invalid_argument("config produced no predictions to score");
    const double step_ms = 1000.0 / config.haptic_rate_hz;
    Trace held = resample_zoh(rec.prediction, trim_ms, scenario.duration_ms, step_ms);
    Trace ref = slice_trace(oracle, trim_ms, scenario.duration_ms);
    return {std::move(held), std::move(ref)};
}

std::vector<SweepRow> sweep_window(const SweepSettings& settings, const SimConfig& base) {
    if (settings.sizes.empty()) throw std::invalid_argument("sweep needs at least one size");
    if (!(settings.trim_ms < settings.duration_ms))
        throw std::invalid_argument("trim must leave a scoring interval");
    const Scenario scenario =
        make_scenario(settings.scenario, settings.seed, settings.duration_ms);
    const Trace oracle = reference_oracle(scenario, base);
    std::vector<SweepRow> out;
    out.reserve(settings.sizes.size());
    for (int size : settings.sizes) {
        SimConfig cfg = base;
        cfg.method = Method::adaptive_prediction;
        cfg.window_size = size;
        cfg.coef_dump = nullptr;
        const auto [held, ref] = prediction_vs_reference(scenario, cfg, oracle, settings.trim_ms);
        out.push_back({size, rms_error(held, ref)});
    }
    return out;
}

AbResult ab_update(const AbSettings& settings, const SimConfig& base) {
    if (settings.num_seeds < 1) throw std::invalid_argument("need at least one seed");
    if (!(settings.trim_ms < settings.duration_ms))
        throw std::invalid_argument("trim must leave a scoring interval");
    AbResult result;
    std::vector<double> pooled_fixed;
    std::vector<double> pooled_adaptive;
    for (int i = 0; i < settings.num_seeds; ++i) {
        const std::uint64_t seed = settings.first_seed + static_cast<std::uint64_t>(i);
        const Scenario scenario = make_scenario(settings.scenario, seed, settings.duration_ms);
        const Trace oracle = reference_oracle(scenario, base);

        SimConfig fixed_cfg = base;
        fixed_cfg.method = Method::fixed_coefficients;
        fixed_cfg.coef_dump = nullptr;
        SimConfig adaptive_cfg = base;
        adaptive_cfg.method = Method::adaptive_prediction;
        adaptive_cfg.coef_dump = nullptr;

        const auto [fixed_held, fixed_ref] =
            prediction_vs_reference(scenario, fixed_cfg, oracle, settings.trim_ms);
        const auto [adaptive_held, adaptive_ref] =
            prediction_vs_reference(scenario, adaptive_cfg, oracle, settings.trim_ms);

        AbRow row;
        row.seed = seed;
        row.rms_fixed = rms_error(fixed_held, fixed_ref);
        row.rms_adaptive = rms_error(adaptive_held, adaptive_ref);
        const std::vector<double> err_fixed = squared_force_errors(fixed_held, fixed_ref);
        const std::vector<double> err_adaptive = squared_force_errors(adaptive_held, adaptive_ref);
        row.f_value = anova_f(err_fixed, err_adaptive);
        if (row.rms_adaptive < row.rms_fixed) ++result.adaptive_wins;
        result.rows.push_back(row);

        pooled_fixed.insert(pooled_fixed.end(), err_fixed.begin(), err_fixed.end());
        pooled_adaptive.insert(pooled_adaptive.end(), err_adaptive.begin(), err_adaptive.end());
    }
    result.pooled_f = anova_f(pooled_fixed, pooled_adaptive);
    return result;
}

} // namespace forcecast
