// forcecast: variable-rate force streams smoothed and predicted onto a fixed
// haptic cadence. Subcommands run single scenarios, method comparisons, and
// the window-size / coefficient-update experiments.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "forcecast/config.hpp"
#include "forcecast/experiments.hpp"
#include "forcecast/metrics.hpp"
#include "forcecast/trace_io.hpp"

namespace fc = forcecast;

namespace {

std::filesystem::path ensure_out_dir(const std::string& dir) {
    std::filesystem::path p(dir);
    std::filesystem::create_directories(p);
    return p;
}

fc::Method parse_method(const std::string& name) {
    if (name == "none") return fc::Method::no_prediction;
    if (name == "fixed") return fc::Method::fixed_coefficients;
    if (name == "adaptive") return fc::Method::adaptive_prediction;
    throw std::invalid_argument("unknown method: " + name);
}

const char* method_name(fc::Method m) {
    switch (m) {
        case fc::Method::no_prediction: return "no_prediction";
        case fc::Method::fixed_coefficients: return "fixed_coefficients";
        case fc::Method::adaptive_prediction: return "adaptive_prediction";
    }
    return "?";
}

// Candidate held (zero-order) onto the reference timestamps.
fc::Trace zoh_onto(const fc::Trace& candidate, const fc::Trace& reference) {
    if (candidate.samples.empty())
        throw std::invalid_argument("candidate trace is empty");
    fc::Trace out;
    out.scenario = candidate.scenario;
    std::size_t i = 0;
    for (const fc::TimedWrench& r : reference.samples) {
        if (candidate.samples.front().t_ms > r.t_ms + 1e-9)
            throw std::invalid_argument("candidate starts after the reference timeline");
        while (i + 1 < candidate.samples.size() &&
               candidate.samples[i + 1].t_ms <= r.t_ms + 1e-9)
            ++i;
        out.append({r.t_ms, candidate.samples[i].wrench});
    }
    return out;
}

bool same_timeline(const fc::Trace& a, const fc::Trace& b) {
    if (a.samples.size() != b.samples.size()) return false;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        if (std::abs(a.samples[i].t_ms - b.samples[i].t_ms) > 1e-9) return false;
    return true;
}

void write_metrics_csv(const std::filesystem::path& path,
                       const std::vector<std::pair<std::string, fc::MetricReport>>& rows) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << "method,rms_force_error,rms_torque_error,max_interframe_jump,mean_abs_jerk\n";
    for (const auto& [name, r] : rows) {
        os << name << ',' << fc::format_double(r.rms_force_error) << ','
           << fc::format_double(r.rms_torque_error) << ','
           << fc::format_double(r.max_interframe_jump) << ','
           << fc::format_double(r.mean_abs_jerk) << '\n';
    }
}

int cmd_simulate(const fc::Options& opts, fc::Method method) {
    const fc::Scenario sc = fc::build_scenario(opts);
    fc::SimConfig cfg = fc::build_sim_config(opts);
    cfg.method = method;
    std::ofstream dump;
    if (!opts.coef_dump.empty()) {
        dump.open(opts.coef_dump, std::ios::binary);
        if (!dump) throw std::runtime_error("cannot write " + opts.coef_dump);
        cfg.coef_dump = &dump;
    }
    const fc::RunRecord rec = fc::run(sc, cfg);
    const auto dir = ensure_out_dir(opts.out_dir);
    fc::write_trace_csv((dir / "haptic.csv").string(), rec.haptic);
    fc::write_trace_csv((dir / "physics.csv").string(), rec.physics);
    fc::write_trace_csv((dir / "prediction.csv").string(), rec.prediction);
    fc::write_meta_csv((dir / "meta.csv").string(), rec.meta);
    std::cout << "scenario=" << sc.name << " seed=" << sc.seed
              << " haptic_samples=" << rec.haptic.samples.size()
              << " physics_samples=" << rec.physics.samples.size()
              << " starvation_ticks=" << rec.starvation_ticks << '\n';
    return 0;
}

int cmd_oracle(const fc::Options& opts) {
    const fc::Scenario sc = fc::build_scenario(opts);
    const fc::SimConfig cfg = fc::build_sim_config(opts);
    const fc::Trace oracle = fc::reference_oracle(sc, cfg);
    const auto dir = ensure_out_dir(opts.out_dir);
    fc::write_trace_csv((dir / "oracle.csv").string(), oracle);
    std::cout << "scenario=" << sc.name << " seed=" << sc.seed
              << " oracle_samples=" << oracle.samples.size() << '\n';
    return 0;
}

int cmd_compare(const fc::Options& opts) {
    const fc::Scenario sc = fc::build_scenario(opts);
    const fc::SimConfig cfg = fc::build_sim_config(opts);
    const auto recs = fc::run_comparison(sc, cfg);
    const fc::Trace oracle = fc::reference_oracle(sc, cfg);
    const double trim = opts.trim_ms >= 0.0 ? opts.trim_ms : 1000.0;
    const fc::Trace oracle_cut = fc::slice_trace(oracle, trim, sc.duration_ms);

    const auto dir = ensure_out_dir(opts.out_dir);
    fc::write_trace_csv((dir / "oracle.csv").string(), oracle);
    fc::write_trace_csv((dir / "physics.csv").string(), recs[2].physics);
    fc::write_meta_csv((dir / "meta.csv").string(), recs[2].meta);

    std::vector<std::pair<std::string, fc::MetricReport>> rows;
    const fc::Method methods[3] = {fc::Method::no_prediction, fc::Method::fixed_coefficients,
                                   fc::Method::adaptive_prediction};
    for (int i = 0; i < 3; ++i) {
        const auto& rec = recs[static_cast<std::size_t>(i)];
        const std::string name = method_name(methods[i]);
        fc::write_trace_csv((dir / (name + ".csv")).string(), rec.haptic);
        const fc::Trace cut = fc::slice_trace(rec.haptic, trim, sc.duration_ms);
        rows.emplace_back(name, fc::compute_metric_report(cut, oracle_cut));
        std::cout << name << ": rms=" << fc::format_double(rows.back().second.rms_force_error)
                  << " max_jump=" << fc::format_double(rows.back().second.max_interframe_jump)
                  << " mean_jerk=" << fc::format_double(rows.back().second.mean_abs_jerk)
                  << " starvation_ticks=" << rec.starvation_ticks << '\n';
    }
    write_metrics_csv(dir / "metrics.csv", rows);
    return 0;
}

int cmd_sweep(const fc::Options& opts) {
    fc::SweepSettings settings;
    settings.scenario = opts.scenario;
    settings.seed = opts.seed;
    if (opts.duration_ms > 0.0) settings.duration_ms = opts.duration_ms;
    if (opts.trim_ms >= 0.0) settings.trim_ms = opts.trim_ms;
    settings.sizes = opts.sizes;
    const auto rows = fc::sweep_window(settings, fc::build_sim_config(opts));
    const auto dir = ensure_out_dir(opts.out_dir);
    std::ofstream os(dir / "sweep.csv", std::ios::binary);
    if (!os) throw std::runtime_error("cannot write sweep.csv");
    os << "window_size,rms\n";
    for (const auto& row : rows) {
        os << row.window_size << ',' << fc::format_double(row.rms) << '\n';
        std::cout << "window_size=" << row.window_size
                  << " rms=" << fc::format_double(row.rms) << '\n';
    }
    return 0;
}

int cmd_ab(const fc::Options& opts) {
    fc::AbSettings settings;
    settings.scenario = opts.scenario;
    settings.first_seed = opts.first_seed;
    settings.num_seeds = opts.num_seeds;
    if (opts.duration_ms > 0.0) settings.duration_ms = opts.duration_ms;
    if (opts.trim_ms >= 0.0) settings.trim_ms = opts.trim_ms;
    const fc::AbResult result = fc::ab_update(settings, fc::build_sim_config(opts));
    const auto dir = ensure_out_dir(opts.out_dir);
    std::ofstream os(dir / "ab_update.csv", std::ios::binary);
    if (!os) throw std::runtime_error("cannot write ab_update.csv");
    os << "seed,rms_fixed,rms_adaptive,f_value\n";
    for (const auto& row : result.rows) {
        os << row.seed << ',' << fc::format_double(row.rms_fixed) << ','
           << fc::format_double(row.rms_adaptive) << ',' << fc::format_double(row.f_value)
           << '\n';
    }
    std::cout << "adaptive_wins=" << result.adaptive_wins << "/" << result.rows.size()
              << " pooled_f=" << fc::format_double(result.pooled_f) << '\n';
    return 0;
}

int cmd_metrics(const fc::Options& opts) {
    if (opts.candidate_csv.empty() || opts.reference_csv.empty())
        throw std::invalid_argument("metrics needs --candidate and --reference");
    const fc::Trace cand = fc::read_trace_csv(opts.candidate_csv);
    const fc::Trace ref = fc::read_trace_csv(opts.reference_csv);
    const fc::Trace aligned = same_timeline(cand, ref) ? cand : zoh_onto(cand, ref);
    const fc::MetricReport r = fc::compute_metric_report(aligned, ref);
    const auto dir = ensure_out_dir(opts.out_dir);
    write_metrics_csv(dir / "metrics.csv", {{"candidate", r}});
    std::cout << "rms_force_error=" << fc::format_double(r.rms_force_error) << '\n'
              << "rms_torque_error=" << fc::format_double(r.rms_torque_error) << '\n'
              << "max_interframe_jump=" << fc::format_double(r.max_interframe_jump) << '\n'
              << "mean_abs_jerk=" << fc::format_double(r.mean_abs_jerk) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    fc::Options opts;
    std::string config_path;
    std::string method = "adaptive";

    CLI::App app{"variable-rate force stream prediction and smoothing"};
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--scenario", opts.scenario, "free_space | peg_contact | complex_contact");
    app.add_option("--seed", opts.seed, "scenario RNG seed");
    app.add_option("--mass", opts.mass, "tool mass in kg (<= 0 uses the scenario default)");
    app.add_option("--duration-ms", opts.duration_ms, "run length (<= 0 uses the default)");
    app.add_option("--window-size", opts.window_size, "sliding-window capacity");
    app.add_option("--order", opts.order, "pin the model order (implies --order-auto=false)");
    app.add_flag("--order-auto,!--no-order-auto", opts.order_auto,
                 "choose the order from the data (default)");
    app.add_option("--refit-interval", opts.refit_interval, "physics ticks between refits");
    app.add_option("--sign-mode", opts.sign_mode, "standard_damper | inverted_damper");
    app.add_option("--out-dir", opts.out_dir, "output directory");
    app.add_option("--config", config_path, "key = value config file (flags win)");
    app.add_option("--method", method, "simulate pipeline: none | fixed | adaptive");
    app.add_option("--sizes", opts.sizes, "window sizes for sweep-window")->delimiter(',');
    app.add_option("--num-seeds", opts.num_seeds, "seed count for ab-update");
    app.add_option("--first-seed", opts.first_seed, "first seed for ab-update");
    app.add_option("--trim-ms", opts.trim_ms, "scoring interval start");
    app.add_option("--coef-dump", opts.coef_dump, "write per-refit coefficient rows here");
    app.add_option("--trajectory", opts.trajectory_csv, "device trajectory CSV");
    app.add_option("--candidate", opts.candidate_csv, "candidate trace CSV (metrics)");
    app.add_option("--reference", opts.reference_csv, "reference trace CSV (metrics)");

    auto* simulate = app.add_subcommand("simulate", "run one scenario, write the four CSVs");
    auto* compare = app.add_subcommand("compare", "hold vs frozen vs adaptive on one scenario");
    auto* sweep = app.add_subcommand("sweep-window", "prediction RMS across window sizes");
    auto* ab = app.add_subcommand("ab-update", "frozen vs adaptive across seeds");
    auto* metrics = app.add_subcommand("metrics", "score a trace CSV against a reference CSV");
    auto* oracle = app.add_subcommand("oracle", "write the full-rate reference trace");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        // Flags the user spelled out stay locked while the config file applies.
        if (!config_path.empty()) {
            const std::pair<const char*, const char*> flag_keys[] = {
                {"--scenario", "scenario"},       {"--seed", "seed"},
                {"--mass", "mass"},               {"--duration-ms", "duration_ms"},
                {"--window-size", "window_size"}, {"--order", "order"},
                {"--order-auto", "order_auto"},   {"--refit-interval", "refit_interval"},
                {"--sign-mode", "sign_mode"},     {"--out-dir", "out_dir"},
                {"--sizes", "sizes"},             {"--num-seeds", "num_seeds"},
                {"--first-seed", "first_seed"},   {"--trim-ms", "trim_ms"},
                {"--coef-dump", "coef_dump"},     {"--trajectory", "trajectory_csv"},
                {"--candidate", "candidate_csv"}, {"--reference", "reference_csv"},
            };
            std::vector<std::string> locked;
            for (const auto& [flag, key] : flag_keys)
                if (app.count(flag) > 0) locked.emplace_back(key);
            fc::apply_config_file(config_path, opts, locked);
        }
        if (app.count("--order") > 0 && app.count("--order-auto") == 0) opts.order_auto = false;

        if (simulate->parsed()) return cmd_simulate(opts, parse_method(method));
        if (compare->parsed()) return cmd_compare(opts);
        if (sweep->parsed()) return cmd_sweep(opts);
        if (ab->parsed()) return cmd_ab(opts);
        if (metrics->parsed()) return cmd_metrics(opts);
        if (oracle->parsed()) return cmd_oracle(opts);
        std::cerr << "no subcommand given\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
