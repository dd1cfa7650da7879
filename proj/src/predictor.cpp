#include "forcecast/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "forcecast/trace_io.hpp"

namespace forcecast {

namespace {

// Component accessors so the six axes can be handled uniformly.
double axis_value(const Wrench& w, int axis) {
    switch (axis) {
        case 0: return w.force.x;
        case 1: return w.force.y;
        case 2: return w.force.z;
        case 3: return w.torque.x;
        case 4: return w.torque.y;
        default: return w.torque.z;
    }
}

double& axis_ref(Wrench& w, int axis) {
    switch (axis) {
        case 0: return w.force.x;
        case 1: return w.force.y;
        case 2: return w.force.z;
        case 3: return w.torque.x;
        case 4: return w.torque.y;
        default: return w.torque.z;
    }
}

constexpr const char* kAxisNames[6] = {"fx", "fy", "fz", "tx", "ty", "tz"};

// Window mean computed as x0 + sum(x - x0)/N. The shifted form makes the
// residuals of a constant window exactly zero, so c0 == 0 holds without an
// epsilon and constant signals predict exactly.
double shifted_mean(const SlidingWindow& w) {
    double x0 = w[0];
    double acc = 0.0;
    for (int i = 0; i < w.count(); ++i) acc += w[i] - x0;
    return x0 + acc / w.count();
}

// c_0 .. c_max_lag in one pass over the mean-centered window.
std::vector<double> autocovariances(const SlidingWindow& w, int max_lag, DivisorMode divisor) {
    int n = w.count();
    double mean = shifted_mean(w);
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) r[i] = w[i] - mean;
    double div = divisor == DivisorMode::unbiased_n_minus_1 ? n - 1.0 : double(n);
    std::vector<double> c(max_lag + 1, 0.0);
    for (int lag = 0; lag <= max_lag; ++lag) {
        double acc = 0.0;
        for (int t = 0; t + lag < n; ++t) acc += r[t] * r[t + lag];
        c[lag] = acc / div;
    }
    return c;
}

YuleWalkerSystem system_from_autocov(const std::vector<double>& c, int p) {
    if (!(c[0] > 0.0))
        throw degenerate_signal_error("zero-variance window: cannot form normal equations");
    YuleWalkerSystem sys;
    sys.p = p;
    sys.autocov.assign(c.begin(), c.begin() + p + 1);
    sys.rho.resize(p);
    for (int k = 1; k <= p; ++k) sys.rho[k - 1] = c[k] / c[0];
    sys.R.assign(std::size_t(p) * p, 0.0);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            int lag = std::abs(i - j);
            sys.R[std::size_t(i) * p + j] = lag == 0 ? 1.0 : c[lag] / c[0];
        }
    return sys;
}

// Dense solve with partial pivoting; fine at p <= 8.
std::vector<double> solve_linear(std::vector<double> a, std::vector<double> b, int n) {
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[std::size_t(r) * n + col]) > std::abs(a[std::size_t(pivot) * n + col]))
                pivot = r;
        if (pivot != col) {
            for (int k = 0; k < n; ++k)
                std::swap(a[std::size_t(col) * n + k], a[std::size_t(pivot) * n + k]);
            std::swap(b[col], b[pivot]);
        }
        double d = a[std::size_t(col) * n + col];
        if (d == 0.0) return {}; // singular even with ridge
        for (int r = col + 1; r < n; ++r) {
            double f = a[std::size_t(r) * n + col] / d;
            if (f == 0.0) continue;
            for (int k = col; k < n; ++k)
                a[std::size_t(r) * n + k] -= f * a[std::size_t(col) * n + k];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (int r = n - 1; r >= 0; --r) {
        double acc = b[r];
        for (int k = r + 1; k < n; ++k) acc -= a[std::size_t(r) * n + k] * x[k];
        x[r] = acc / a[std::size_t(r) * n + r];
    }
    return x;
}

ArCoefficients fit_from_system(const YuleWalkerSystem& sys, double ridge_lambda) {
    std::vector<double> a = sys.R;
    for (int i = 0; i < sys.p; ++i) a[std::size_t(i) * sys.p + i] += ridge_lambda;
    std::vector<double> phi = solve_linear(std::move(a), sys.rho, sys.p);
    if (phi.empty())
        throw degenerate_signal_error("normal-equation solve failed");
    double acc = 0.0;
    for (int i = 0; i < sys.p; ++i) {
        if (!std::isfinite(phi[i]))
            throw degenerate_signal_error("non-finite coefficients from solve");
        acc += phi[i] * sys.rho[i];
    }
    ArCoefficients out;
    out.p = sys.p;
    out.phi = std::move(phi);
    out.residual_variance = std::max(0.0, sys.autocov[0] * (1.0 - acc));
    return out;
}

// FPE profile over p in [1, p_max] from a shared autocovariance sequence,
// normalized by c0 so scores are dimensionless and comparable across axes.
// Orders whose solve degenerates stay at +inf rather than aborting.
std::vector<double> fpe_profile(const std::vector<double>& c, int p_max, double ridge_lambda, int n) {
    std::vector<double> fpe(p_max + 1, std::numeric_limits<double>::infinity());
    for (int p = 1; p <= p_max && p <= n - 2; ++p) {
        try {
            ArCoefficients fit = fit_from_system(system_from_autocov(c, p), ridge_lambda);
            fpe[p] = (fit.residual_variance / c[0]) * (n + p + 1.0) / (n - p - 1.0);
        } catch (const degenerate_signal_error&) {
        }
    }
    return fpe;
}

} // namespace

SlidingWindow::SlidingWindow(int capacity) : capacity_(capacity) {
    if (capacity < 1) throw std::invalid_argument("window capacity must be positive");
    buf_.resize(capacity);
}

void SlidingWindow::push(double v) {
    if (count_ < capacity_) {
        buf_[(head_ + count_) % capacity_] = v;
        ++count_;
    } else {
        buf_[head_] = v;
        head_ = (head_ + 1) % capacity_;
    }
}

double SlidingWindow::operator[](int i) const {
    if (i < 0 || i >= count_) throw std::invalid_argument("window index out of range");
    return buf_[(head_ + i) % capacity_];
}

double autocovariance(const SlidingWindow& window, int lag, DivisorMode divisor) {
    if (!window.full()) throw not_ready_error("window not full");
    if (lag < 0 || lag >= window.capacity())
        throw std::invalid_argument("autocovariance lag out of range");
    return autocovariances(window, lag, divisor)[lag];
}

YuleWalkerSystem build_yule_walker(const SlidingWindow& window, int p, DivisorMode divisor) {
    if (!window.full()) throw not_ready_error("window not full");
    if (p < 1 || p >= window.capacity())
        throw std::invalid_argument("order out of range for window");
    return system_from_autocov(autocovariances(window, p, divisor), p);
}

ArCoefficients solve_coefficients(const YuleWalkerSystem& system, double ridge_lambda) {
    return fit_from_system(system, ridge_lambda);
}

int select_order_fpe(const SlidingWindow& window, int p_max, double ridge_lambda,
                     DivisorMode divisor) {
    if (!window.full()) throw not_ready_error("window not full");
    if (p_max < 1) throw std::invalid_argument("p_max must be >= 1");
    auto c = autocovariances(window, std::min(p_max, window.capacity() - 1), divisor);
    if (!(c[0] > 0.0))
        throw degenerate_signal_error("zero-variance window: order selection undefined");
    auto fpe = fpe_profile(c, int(c.size()) - 1, ridge_lambda, window.capacity());
    int best = 1;
    for (int p = 2; p < int(fpe.size()); ++p)
        if (fpe[p] < fpe[best]) best = p;
    return best;
}

ArModel::ArModel(int window_capacity, int refit_interval, PredictorConfig cfg, int forced_order)
    : cfg_(std::move(cfg)),
      capacity_(window_capacity),
      refit_interval_(refit_interval),
      forced_order_(forced_order) {
    if (window_capacity < 2) throw std::invalid_argument("window capacity must be >= 2");
    if (refit_interval < 1) throw std::invalid_argument("refit interval must be >= 1");
    if (cfg_.p_max < 1 || cfg_.p_max >= window_capacity)
        throw std::invalid_argument("p_max must satisfy 1 <= p_max < window capacity");
    if (forced_order_ < 0 || forced_order_ > cfg_.p_max)
        throw std::invalid_argument("forced order out of range");
    if (cfg_.default_phi.empty())
        throw std::invalid_argument("default_phi must not be empty");
    win_.assign(6, SlidingWindow(window_capacity));
}

ArModel::RefitReport ArModel::ingest(const TimedWrench& sample) {
    for (int axis = 0; axis < 6; ++axis) win_[axis].push(axis_value(sample.wrench, axis));
    ++ingested_;
    RefitReport report;
    if (refit_enabled_ && win_[0].full() && ingested_ % refit_interval_ == 0) refit(report);
    return report;
}

void ArModel::refit(RefitReport& report) {
    ++refits_done_;
    report.refit = true;

    // Per-axis autocovariances up to p_max (shared-coefficient mode sums them
    // within the force triple and the torque triple before fitting).
    int max_lag = std::min(cfg_.p_max, capacity_ - 1);
    std::array<std::vector<double>, 6> cov;
    for (int axis = 0; axis < 6; ++axis) {
        cov[axis] = autocovariances(win_[axis], max_lag, cfg_.divisor);
        mean_[axis] = shifted_mean(win_[axis]); // recomputed every refit
    }
    if (cfg_.shared_coefficients) {
        for (int g = 0; g < 2; ++g) {
            std::vector<double> sum(max_lag + 1, 0.0);
            for (int a = 3 * g; a < 3 * g + 3; ++a)
                for (int k = 0; k <= max_lag; ++k) sum[k] += cov[a][k];
            for (int a = 3 * g; a < 3 * g + 3; ++a) cov[a] = sum;
        }
    }

    // One order for all six axes: minimize the c0-normalized FPE summed over
    // axes with usable variance. Runs at the first full-window refit and then
    // every cfg_.order_reselect_every refits; a pinned order skips this.
    bool select_now = forced_order_ == 0 &&
                      (refits_done_ - 1) % std::max(1, cfg_.order_reselect_every) == 0;
    if (forced_order_ > 0) {
        current_order_ = forced_order_;
    } else if (select_now || current_order_ == 0) {
        std::vector<double> total(max_lag + 1, 0.0);
        bool any_live = false;
        for (int axis = 0; axis < 6; ++axis) {
            if (!(cov[axis][0] > 0.0)) continue;
            any_live = true;
            auto fpe = fpe_profile(cov[axis], max_lag, cfg_.ridge_lambda, capacity_);
            for (int p = 1; p <= max_lag; ++p) total[p] += fpe[p];
        }
        if (any_live) {
            int best = 1;
            for (int p = 2; p <= max_lag; ++p)
                if (total[p] < total[best]) best = p;
            current_order_ = best;
        } else if (current_order_ == 0) {
            current_order_ = 1;
        }
    }

    for (int axis = 0; axis < 6; ++axis) {
        try {
            ArCoefficients fit =
                fit_from_system(system_from_autocov(cov[axis], current_order_), cfg_.ridge_lambda);
            // Shared mode solves on summed autocovariances; rescale the residual
            // to the axis's own variance so units stay per-axis.
            if (cfg_.shared_coefficients) {
                double own_c0 = autocovariance(win_[axis], 0, cfg_.divisor);
                fit.residual_variance =
                    cov[axis][0] > 0.0 ? fit.residual_variance * own_c0 / cov[axis][0] : 0.0;
            }
            coef_[axis] = std::move(fit);
            axis_fitted_[axis] = true;
            any_fitted_ = true;
        } catch (const degenerate_signal_error&) {
            report.degenerate[axis] = true; // previous coefficients retained
        }
        report.residual_variance[axis] = coef_[axis].residual_variance;
        if (dump_ && axis_fitted_[axis]) {
            *dump_ << kAxisNames[axis] << ',' << coef_[axis].p;
            for (double c : coef_[axis].phi) *dump_ << ',' << format_double(c);
            *dump_ << ',' << format_double(coef_[axis].residual_variance) << '\n';
        }
    }
    report.order = current_order_;
}

Wrench ArModel::predict_next() const {
    if (win_[0].count() == 0) throw not_ready_error("no samples ingested");
    Wrench out;
    int available = win_[0].count();
    for (int axis = 0; axis < 6; ++axis) {
        double v;
        if (axis_fitted_[axis]) {
            const ArCoefficients& c = coef_[axis];
            double acc = mean_[axis];
            for (int i = 0; i < c.p; ++i)
                acc += c.phi[i] * (win_[axis].newest(i) - mean_[axis]);
            v = acc;
        } else {
            // Warmup: default coefficients over whatever history exists, with
            // missing samples padded by the oldest available one.
            double acc = 0.0;
            for (std::size_t i = 0; i < cfg_.default_phi.size(); ++i) {
                int k = std::min<int>(int(i), available - 1);
                acc += cfg_.default_phi[i] * win_[axis].newest(k);
            }
            v = acc;
        }
        axis_ref(out, axis) = v;
    }
    return out;
}

} // namespace forcecast
