#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "forcecast/predictor.hpp"
#include "forcecast/rng.hpp"

using namespace forcecast;

namespace {

SlidingWindow window_of(const std::vector<double>& values, int capacity = -1) {
    SlidingWindow w(capacity < 0 ? static_cast<int>(values.size()) : capacity);
    for (double v : values) w.push(v);
    return w;
}

// Synthetic AR series driven by seeded Gaussian noise, burn-in discarded.
std::vector<double> ar_series(const std::vector<double>& phi, double sigma, int n,
                              std::uint64_t seed) {
    Rng rng(seed);
    const int p = static_cast<int>(phi.size());
    const int burn = 200;
    std::vector<double> y(static_cast<std::size_t>(n + burn), 0.0);
    for (int t = p; t < n + burn; ++t) {
        double v = sigma * rng.normal();
        for (int i = 0; i < p; ++i) v += phi[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(t - 1 - i)];
        y[static_cast<std::size_t>(t)] = v;
    }
    return {y.begin() + burn, y.end()};
}

TimedWrench sample_at(double t, double v) {
    TimedWrench s;
    s.t_ms = t;
    s.wrench.force = {v, 2.0 * v, -v};
    s.wrench.torque = {0.1 * v, 0.0, -0.1 * v};
    return s;
}

} // namespace

TEST_CASE("sliding window evicts oldest first") {
    SlidingWindow w(3);
    CHECK_FALSE(w.full());
    for (int v = 1; v <= 5; ++v) w.push(v);
    CHECK(w.full());
    CHECK(w.count() == 3);
    CHECK(w[0] == 3.0);
    CHECK(w[1] == 4.0);
    CHECK(w[2] == 5.0);
    CHECK(w.newest(0) == 5.0);
    CHECK(w.newest(2) == 3.0);
    CHECK_THROWS_AS(w[3], std::invalid_argument);
}

TEST_CASE("autocovariance hand values on 1..5") {
    const SlidingWindow w = window_of({1, 2, 3, 4, 5});
    // mean 3; centered [-2,-1,0,1,2]
    CHECK(autocovariance(w, 0) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(autocovariance(w, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(autocovariance(w, 2) == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(autocovariance(w, 0, DivisorMode::biased_n) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(autocovariance(w, 1, DivisorMode::biased_n) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK_THROWS_AS(autocovariance(w, 5), std::invalid_argument);
    CHECK_THROWS_AS(autocovariance(w, -1), std::invalid_argument);
}

TEST_CASE("autocovariance requires a full window") {
    SlidingWindow w(10);
    w.push(1.0);
    w.push(2.0);
    CHECK_THROWS_AS(autocovariance(w, 0), not_ready_error);
}

TEST_CASE("large offsets cancel exactly in the centered moments") {
    const double base = 1e9;
    const SlidingWindow big = window_of({base + 1, base + 2, base + 3, base + 4, base + 5});
    const SlidingWindow small = window_of({1, 2, 3, 4, 5});
    CHECK(autocovariance(big, 0) == autocovariance(small, 0));
    CHECK(autocovariance(big, 1) == autocovariance(small, 1));
}

TEST_CASE("yule-walker system and solve on 1..5, p = 2") {
    const SlidingWindow w = window_of({1, 2, 3, 4, 5});
    const YuleWalkerSystem sys = build_yule_walker(w, 2);
    CHECK(sys.p == 2);
    CHECK(sys.autocov[0] == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(sys.rho[0] == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(sys.rho[1] == doctest::Approx(-0.1).epsilon(1e-14));
    CHECK(sys.R[0] == 1.0);
    CHECK(sys.R[1] == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(sys.R[2] == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(sys.R[3] == 1.0);

    const ArCoefficients c = solve_coefficients(sys, 0.0);
    CHECK(c.p == 2);
    // [[1,.4],[.4,1]] phi = (.4,-.1): phi = (0.44, -0.26)/0.84
    CHECK(c.phi[0] == doctest::Approx(0.44 / 0.84).epsilon(1e-12));
    CHECK(c.phi[1] == doctest::Approx(-0.26 / 0.84).epsilon(1e-12));
    // c0 * (1 - phi . rho)
    const double expected_res = 2.5 * (1.0 - (0.44 / 0.84) * 0.4 - (-0.26 / 0.84) * (-0.1));
    CHECK(c.residual_variance == doctest::Approx(expected_res).epsilon(1e-12));
    CHECK(c.residual_variance >= 0.0);
}

TEST_CASE("constant window is reported as degenerate") {
    const SlidingWindow w = window_of({4.2, 4.2, 4.2, 4.2, 4.2, 4.2});
    CHECK_THROWS_AS(build_yule_walker(w, 2), degenerate_signal_error);
}

TEST_CASE("ridge keeps a perfectly predictable signal solvable") {
    // A pure two-frequency signal makes R nearly singular at higher orders.
    std::vector<double> v;
    for (int t = 0; t < 64; ++t)
        v.push_back(std::sin(0.3 * t) + 0.5 * std::sin(0.7 * t));
    const SlidingWindow w = window_of(v);
    const YuleWalkerSystem sys = build_yule_walker(w, 6);
    const ArCoefficients c = solve_coefficients(sys, 1e-8);
    for (double phi : c.phi) CHECK(std::isfinite(phi));
    CHECK(c.residual_variance >= 0.0);
}

TEST_CASE("coefficient recovery on a synthetic AR(2)") {
    const std::vector<double> truth{1.2, -0.4};
    const std::vector<double> y = ar_series(truth, 1.0, 1000, 17);
    const SlidingWindow w = window_of(y);
    const ArCoefficients c = solve_coefficients(build_yule_walker(w, 2), 1e-8);
    CHECK(std::abs(c.phi[0] - truth[0]) < 0.15);
    CHECK(std::abs(c.phi[1] - truth[1]) < 0.15);
}

TEST_CASE("fpe picks the generating order") {
    const std::vector<double> y1 = ar_series({0.8}, 1.0, 300, 5);
    CHECK(select_order_fpe(window_of(y1), 8) == 1);
    const std::vector<double> y3 = ar_series({0.5, -0.3, 0.4}, 1.0, 300, 5);
    CHECK(select_order_fpe(window_of(y3), 8) == 3);
}

TEST_CASE("default coefficients extrapolate linearly before the first fit") {
    ArModel m(16, 1, PredictorConfig{});
    m.ingest(sample_at(0.0, 1.0));
    m.ingest(sample_at(7.0, 2.0));
    const Wrench pred = m.predict_next(); // 2*newest - previous
    CHECK(pred.force.x == doctest::Approx(3.0));
    CHECK(pred.force.y == doctest::Approx(6.0));
    CHECK(pred.force.z == doctest::Approx(-3.0));
    CHECK(pred.torque.x == doctest::Approx(0.3));
}

TEST_CASE("a single sample predicts itself") {
    ArModel m(16, 1, PredictorConfig{});
    m.ingest(sample_at(0.0, 5.0));
    const Wrench pred = m.predict_next();
    CHECK(pred.force.x == doctest::Approx(5.0));
    CHECK(pred.force.y == doctest::Approx(10.0));
}

TEST_CASE("predict_next requires at least one sample") {
    const ArModel m(16, 1, PredictorConfig{});
    CHECK_THROWS_AS(m.predict_next(), not_ready_error);
}

TEST_CASE("refits run at the configured cadence once full") {
    PredictorConfig cfg;
    ArModel m(10, 5, cfg, 2);
    int refits = 0;
    for (int t = 0; t < 25; ++t) {
        const auto r = m.ingest(sample_at(t, std::sin(0.4 * t)));
        if (r.refit) ++refits;
    }
    // Full at ingest 10; refits at ingests 10, 15, 20, 25.
    CHECK(refits == 4);
    CHECK(m.fitted());
    CHECK(m.order() == 2);
}

TEST_CASE("degenerate axes keep previous coefficients and are flagged") {
    PredictorConfig cfg;
    cfg.p_max = 2;
    ArModel m(6, 1, cfg, 1);
    // fx varies; all other axes constant (zero variance).
    ArModel::RefitReport last;
    for (int t = 0; t < 6; ++t) {
        TimedWrench s;
        s.t_ms = t;
        s.wrench.force = {std::sin(0.9 * t), 7.0, 0.0};
        last = m.ingest(s);
    }
    CHECK(last.refit);
    CHECK_FALSE(last.degenerate[0]); // fx fit fine
    CHECK(last.degenerate[1]);       // fy constant
    CHECK(last.degenerate[5]);       // tz constant
    // A constant axis predicts its constant exactly.
    const Wrench pred = m.predict_next();
    CHECK(pred.force.y == 7.0);
    CHECK(pred.force.z == 0.0);
    CHECK(std::isfinite(pred.force.x));
}

TEST_CASE("fitted prediction matches the hand-applied recursion") {
    PredictorConfig cfg;
    ArModel m(32, 1, cfg, 2);
    const std::vector<double> y = ar_series({1.2, -0.4}, 1.0, 64, 3);
    for (int t = 0; t < 64; ++t) {
        TimedWrench s;
        s.t_ms = t;
        s.wrench.force = {y[static_cast<std::size_t>(t)], 0.0, 0.0};
        m.ingest(s);
    }
    REQUIRE(m.fitted());
    const ArCoefficients& c = m.coefficients(0);
    REQUIRE(c.p == 2);
    const double mean = m.window_mean(0);
    const double expect = mean + c.phi[0] * (y[63] - mean) + c.phi[1] * (y[62] - mean);
    CHECK(m.predict_next().force.x == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("shared coefficients tie the force triple together") {
    PredictorConfig shared_cfg;
    shared_cfg.shared_coefficients = true;
    ArModel shared(32, 1, shared_cfg, 2);
    PredictorConfig solo_cfg;
    ArModel solo(32, 1, solo_cfg, 2);

    const std::vector<double> y = ar_series({1.1, -0.35}, 1.0, 48, 9);
    for (int t = 0; t < 48; ++t) {
        TimedWrench s;
        s.t_ms = t;
        const double v = y[static_cast<std::size_t>(t)];
        s.wrench.force = {v, -2.0 * v, 0.5 * v}; // scaled copies share autocorrelation
        shared.ingest(s);
        solo.ingest(s);
    }
    REQUIRE(shared.fitted());
    // All force axes carry one coefficient vector...
    CHECK(shared.coefficients(0).phi[0] == doctest::Approx(shared.coefficients(1).phi[0]));
    CHECK(shared.coefficients(0).phi[1] == doctest::Approx(shared.coefficients(2).phi[1]));
    // ...equal to the per-axis fit, since scaling leaves autocorrelation unchanged.
    CHECK(shared.coefficients(0).phi[0] ==
          doctest::Approx(solo.coefficients(0).phi[0]).epsilon(1e-9));
    // Residual variance still tracks each axis's own power (scale factor 4 on fy).
    CHECK(shared.coefficients(1).residual_variance ==
          doctest::Approx(4.0 * shared.coefficients(0).residual_variance).epsilon(1e-9));
}

TEST_CASE("model constructor validates its arguments") {
    PredictorConfig cfg;
    CHECK_THROWS_AS(ArModel(1, 1, cfg), std::invalid_argument);      // capacity too small
    CHECK_THROWS_AS(ArModel(10, 0, cfg), std::invalid_argument);     // bad interval
    CHECK_THROWS_AS(ArModel(10, 1, cfg, 12), std::invalid_argument); // pinned order above p_max
    PredictorConfig wide;
    wide.p_max = 64;
    CHECK_THROWS_AS(ArModel(10, 1, wide), std::invalid_argument); // p_max >= capacity
}
