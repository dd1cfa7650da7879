#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "forcecast/errors.hpp"
#include "forcecast/wrench.hpp"

namespace forcecast {

// Fixed-capacity FIFO ring of scalars, one per tracked axis.
class SlidingWindow {
public:
    explicit SlidingWindow(int capacity);

    void push(double v);
    bool full() const { return count_ == capacity_; }
    int capacity() const { return capacity_; }
    int count() const { return count_; }

    // Oldest-first access, i in [0, count).
    double operator[](int i) const;
    // k samples back from the newest, k in [0, count).
    double newest(int k) const { return (*this)[count_ - 1 - k]; }

private:
    std::vector<double> buf_;
    int capacity_ = 0;
    int head_ = 0; // index of oldest
    int count_ = 0;
};

enum class DivisorMode { unbiased_n_minus_1, biased_n };

struct ArCoefficients {
    int p = 0;
    std::vector<double> phi;        // dimensionless, phi[0] applies to the newest sample
    double residual_variance = 0.0; // N^2 or (N*m)^2
};

struct PredictorConfig {
    std::vector<double> default_phi{2.0, -1.0}; // two-point linear extrapolation until first fit
    int p_max = 8;
    double ridge_lambda = 1e-8;
    DivisorMode divisor = DivisorMode::unbiased_n_minus_1;
    bool shared_coefficients = false; // one fit across the force triple and one across the torque triple
    int order_reselect_every = 10;    // refits between order re-selection passes
};

// Lagged products of the mean-centered window divided by N-1 (unbiased mode) or N.
// Throws not_ready_error if the window is not full, std::invalid_argument on bad lag.
double autocovariance(const SlidingWindow& window, int lag,
                      DivisorMode divisor = DivisorMode::unbiased_n_minus_1);

// Normal equations relating AR coefficients to the autocorrelation sequence.
// R is symmetric Toeplitz with unit diagonal: R[i][j] = rho_|i-j|.
struct YuleWalkerSystem {
    int p = 0;
    std::vector<double> autocov; // c_0 .. c_p
    std::vector<double> rho;     // r_1 .. r_p (rhs)
    std::vector<double> R;       // p*p row-major
};

// Throws degenerate_signal_error when the window has zero variance (c0 == 0).
YuleWalkerSystem build_yule_walker(const SlidingWindow& window, int p,
                                   DivisorMode divisor = DivisorMode::unbiased_n_minus_1);

// Solves (R + lambda*I) phi = rho; residual_variance = c0 * (1 - phi . rho), clamped >= 0.
ArCoefficients solve_coefficients(const YuleWalkerSystem& system, double ridge_lambda);

// Order minimizing sigma^2_p * (N + p + 1) / (N - p - 1) over p in [1, p_max];
// ties resolve toward the smaller order.
int select_order_fpe(const SlidingWindow& window, int p_max, double ridge_lambda = 1e-8,
                     DivisorMode divisor = DivisorMode::unbiased_n_minus_1);

// Six independent scalar AR models (force x/y/z, torque x/y/z) over a shared
// sliding window length, refit in lock-step so all axes carry the same order.
class ArModel {
public:
    struct RefitReport {
        bool refit = false;
        int order = 0;
        std::array<bool, 6> degenerate{};
        std::array<double, 6> residual_variance{};
    };

    // forced_order = 0 selects the order by FPE; > 0 pins it.
    ArModel(int window_capacity, int refit_interval, PredictorConfig cfg, int forced_order = 0);

    // Pushes one sample into all six axis windows; refits when the windows are
    // full and the ingest count hits the refit interval. Degenerate axes keep
    // their previous coefficients and are flagged in the report.
    RefitReport ingest(const TimedWrench& sample);

    // One-step-ahead point prediction (noise term zero). Before the first fit,
    // applies default_phi over the available history, padding missing samples
    // with the oldest available one (a single sample therefore predicts itself).
    Wrench predict_next() const;

    bool fitted() const { return any_fitted_; }
    int order() const { return current_order_; }
    int window_capacity() const { return capacity_; }
    const ArCoefficients& coefficients(int axis) const { return coef_[axis]; }
    double window_mean(int axis) const { return mean_[axis]; }

    // When set, appends one CSV row per axis per refit:
    // axis,p,phi_1..phi_p,residual_variance
    void set_dump_stream(std::ostream* os) { dump_ = os; }

    // Freezes the model on default_phi: ingest still tracks history, but no
    // refit ever runs (the frozen-coefficient baseline in comparisons).
    void disable_refit() { refit_enabled_ = false; }

private:
    void refit(RefitReport& report);

    std::vector<SlidingWindow> win_; // 6 axes: fx,fy,fz,tx,ty,tz
    std::array<ArCoefficients, 6> coef_{};
    std::array<double, 6> mean_{};
    std::array<bool, 6> axis_fitted_{};
    PredictorConfig cfg_;
    int capacity_ = 0;
    bool refit_enabled_ = true;
    int refit_interval_ = 1;
    int forced_order_ = 0;
    int current_order_ = 0;
    long ingested_ = 0;
    long refits_done_ = 0;
    bool any_fitted_ = false;
    std::ostream* dump_ = nullptr;
};

} // namespace forcecast
