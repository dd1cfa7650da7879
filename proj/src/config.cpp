#include "forcecast/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "forcecast/trace_io.hpp"

namespace forcecast {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw std::invalid_argument("config key '" + key + "': bad number '" + value + "'");
    return out;
}

long long parse_int(const std::string& key, const std::string& value) {
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw std::invalid_argument("config key '" + key + "': bad integer '" + value + "'");
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw std::invalid_argument("config key '" + key + "': bad boolean '" + value + "'");
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(static_cast<int>(parse_int(key, item)));
    }
    if (out.empty()) throw std::invalid_argument("config key '" + key + "': empty list");
    return out;
}

// Returns false when the key is unknown.
bool apply_key(Options& o, const std::string& key, const std::string& value) {
    if (key == "scenario") o.scenario = value;
    else if (key == "seed") o.seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "mass") o.mass = parse_double(key, value);
    else if (key == "duration_ms") o.duration_ms = parse_double(key, value);
    else if (key == "window_size") o.window_size = static_cast<int>(parse_int(key, value));
    else if (key == "order") o.order = static_cast<int>(parse_int(key, value));
    else if (key == "order_auto") o.order_auto = parse_bool(key, value);
    else if (key == "refit_interval") o.refit_interval = static_cast<int>(parse_int(key, value));
    else if (key == "sign_mode") o.sign_mode = value;
    else if (key == "out_dir") o.out_dir = value;
    else if (key == "sizes") o.sizes = parse_int_list(key, value);
    else if (key == "num_seeds") o.num_seeds = static_cast<int>(parse_int(key, value));
    else if (key == "first_seed") o.first_seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "trim_ms") o.trim_ms = parse_double(key, value);
    else if (key == "gravity_z") o.gravity_z = parse_double(key, value);
    else if (key == "k_ref") o.k_ref = parse_double(key, value);
    else if (key == "k_rot_ref") o.k_rot_ref = parse_double(key, value);
    else if (key == "zeta") o.zeta = parse_double(key, value);
    else if (key == "f_max") o.f_max = parse_double(key, value);
    else if (key == "t_max") o.t_max = parse_double(key, value);
    else if (key == "contact_stiffness") o.contact_stiffness = parse_double(key, value);
    else if (key == "haptic_rate_hz") o.haptic_rate_hz = parse_double(key, value);
    else if (key == "n_max") o.n_max = static_cast<int>(parse_int(key, value));
    else if (key == "p_max") o.p_max = static_cast<int>(parse_int(key, value));
    else if (key == "ridge_lambda") o.ridge_lambda = parse_double(key, value);
    else if (key == "divisor") o.divisor = value;
    else if (key == "shared_coefficients") o.shared_coefficients = parse_bool(key, value);
    else if (key == "coef_dump") o.coef_dump = value;
    else if (key == "trajectory_csv") o.trajectory_csv = value;
    else if (key == "candidate_csv") o.candidate_csv = value;
    else if (key == "reference_csv") o.reference_csv = value;
    else return false;
    return true;
}

} // namespace

void apply_config_file(const std::string& path, Options& opts,
                       const std::vector<std::string>& locked) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": empty key");
        if (std::find(locked.begin(), locked.end(), key) != locked.end()) continue;
        if (!apply_key(opts, key, value))
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
    }
}

SimConfig build_sim_config(const Options& opts) {
    SimConfig cfg;
    cfg.window_size = opts.window_size;
    cfg.refit_interval = opts.refit_interval;
    if (!opts.order_auto) {
        if (opts.order < 1) throw std::invalid_argument("pinned order must be >= 1");
        cfg.order = opts.order;
    }
    cfg.predictor.p_max = opts.p_max;
    cfg.predictor.ridge_lambda = opts.ridge_lambda;
    cfg.predictor.shared_coefficients = opts.shared_coefficients;
    if (opts.divisor == "n_minus_1") cfg.predictor.divisor = DivisorMode::unbiased_n_minus_1;
    else if (opts.divisor == "n") cfg.predictor.divisor = DivisorMode::biased_n;
    else throw std::invalid_argument("unknown divisor mode: " + opts.divisor);
    if (opts.sign_mode == "standard_damper") cfg.coupling.sign_mode = SignMode::standard_damper;
    else if (opts.sign_mode == "inverted_damper")
        cfg.coupling.sign_mode = SignMode::inverted_damper;
    else throw std::invalid_argument("unknown sign mode: " + opts.sign_mode);
    cfg.coupling.k_ref = opts.k_ref;
    cfg.coupling.k_rot_ref = opts.k_rot_ref;
    cfg.coupling.zeta = opts.zeta;
    cfg.coupling.f_max = opts.f_max;
    cfg.coupling.t_max = opts.t_max;
    if (opts.haptic_rate_hz <= 0.0) throw std::invalid_argument("haptic rate must be > 0");
    cfg.haptic_rate_hz = opts.haptic_rate_hz;
    if (opts.n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    cfg.n_max = opts.n_max;
    return cfg;
}

Scenario build_scenario(const Options& opts) {
    Scenario sc = make_scenario(opts.scenario, opts.seed, opts.duration_ms, opts.mass);
    sc.gravity = Vec3{0.0, 0.0, opts.gravity_z};
    sc.contact.k_c = opts.contact_stiffness;
    if (!opts.trajectory_csv.empty()) {
        sc.trajectory =
            std::make_shared<CsvTrajectory>(read_trajectory_csv(opts.trajectory_csv));
    }
    return sc;
}

} // namespace forcecast
