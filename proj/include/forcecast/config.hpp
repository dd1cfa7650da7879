#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "forcecast/simulator.hpp"

namespace forcecast {

// Everything the CLI can set; command-line flags win over config-file keys.
struct Options {
    std::string scenario = "complex_contact";
    std::uint64_t seed = 7;
    double mass = 0.0;        // <= 0 -> scenario default
    double duration_ms = 0.0; // <= 0 -> scenario default
    int window_size = 300;
    int order = 0; // with order_auto=false, pins the fit order
    bool order_auto = true;
    int refit_interval = 1;
    std::string sign_mode = "standard_damper";
    std::string out_dir = "out";
    std::vector<int> sizes{100, 200, 300, 400, 500};
    int num_seeds = 20;
    std::uint64_t first_seed = 100;
    double trim_ms = -1.0; // < 0 -> per-command default

    double gravity_z = -9.81;
    double k_ref = 500.0;
    double k_rot_ref = 2.0;
    double zeta = 1.0;
    double f_max = 8.5;
    double t_max = 0.5;
    double contact_stiffness = 2000.0;
    double haptic_rate_hz = 1000.0;
    int n_max = 100;
    int p_max = 8;
    double ridge_lambda = 1e-8;
    std::string divisor = "n_minus_1"; // or "n"
    bool shared_coefficients = false;
    std::string coef_dump;      // path; empty = off
    std::string trajectory_csv; // path; empty = synthetic trajectory
    std::string candidate_csv;  // metrics command input
    std::string reference_csv;  // metrics command input
};

// Parses `key = value` lines ('#' starts a comment; blank lines skipped) and
// applies each known key to opts, except keys named in `locked` (flags the
// user set explicitly). Unknown keys or unparsable values throw
// std::invalid_argument naming the offending line.
void apply_config_file(const std::string& path, Options& opts,
                       const std::vector<std::string>& locked);

// Translates the flat options into the simulation configuration; throws
// std::invalid_argument on out-of-range values or unknown mode names.
SimConfig build_sim_config(const Options& opts);

// Builds the scenario named in the options, then applies the overrides
// (gravity, contact stiffness, trajectory CSV).
Scenario build_scenario(const Options& opts);

} // namespace forcecast
