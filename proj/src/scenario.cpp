#include "forcecast/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace forcecast {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// Smoothstep engagement ramp and its time derivative (per second).
std::pair<double, double> ramp(double t_ms, double ramp_ms) {
    if (t_ms >= ramp_ms) return {1.0, 0.0};
    if (t_ms <= 0.0) return {0.0, 0.0};
    double r = t_ms / ramp_ms;
    double e = r * r * (3.0 - 2.0 * r);
    double de = 6.0 * r * (1.0 - r) / ramp_ms * 1000.0;
    return {e, de};
}
} // namespace

double SinBank::value(double t_ms) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < freq_hz.size(); ++i)
        acc += amp[i] * std::sin(kTwoPi * freq_hz[i] * t_ms * 1e-3 + phase[i]);
    return acc;
}

double SinBank::deriv(double t_ms) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < freq_hz.size(); ++i)
        acc += amp[i] * kTwoPi * freq_hz[i] * std::cos(kTwoPi * freq_hz[i] * t_ms * 1e-3 + phase[i]);
    return acc;
}

SinBank SinBank::make(Rng& rng, int n, double fmin_hz, double fmax_hz, double rms) {
    SinBank b;
    b.freq_hz.resize(n);
    b.phase.resize(n);
    b.amp.resize(n);
    for (int i = 0; i < n; ++i) b.freq_hz[i] = rng.uniform(fmin_hz, fmax_hz);
    for (int i = 0; i < n; ++i) b.phase[i] = rng.uniform(0.0, kTwoPi);
    double power = 0.0;
    for (int i = 0; i < n; ++i) {
        b.amp[i] = 1.0 / std::sqrt(b.freq_hz[i]);
        power += 0.5 * b.amp[i] * b.amp[i];
    }
    double scale = rms / std::sqrt(power);
    for (int i = 0; i < n; ++i) b.amp[i] *= scale;
    return b;
}

std::pair<double, double> WanderTrack::eval(double t_ms) const {
    double s = t_ms / dwell_ms;
    double fk = std::floor(s);
    int k = int(fk);
    double u = s - fk;
    int last = int(w.size()) - 1;
    auto at = [&](int i) { return w[std::clamp(i, 0, last)]; };
    double p0 = at(k - 1), p1 = at(k), p2 = at(k + 1), p3 = at(k + 2);
    double a = 2.0 * p1;
    double b = p2 - p0;
    double c = 2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3;
    double d = -p0 + 3.0 * p1 - 3.0 * p2 + p3;
    double pos = 0.5 * (a + b * u + c * u * u + d * u * u * u);
    double vel = 0.5 * (b + 2.0 * c * u + 3.0 * d * u * u) / dwell_ms * 1000.0;
    return {pos, vel};
}

WanderTrack WanderTrack::make(Rng& rng, double duration_ms, double dwell_ms, double amplitude) {
    WanderTrack t;
    t.dwell_ms = dwell_ms;
    int n = int(duration_ms / dwell_ms) + 4;
    t.w.resize(n);
    for (int i = 0; i < n; ++i) t.w[i] = rng.uniform(-amplitude, amplitude);
    return t;
}

SyntheticTrajectory::SyntheticTrajectory(Rng& rng, double duration_ms, double press_depth_m,
                                         double ramp_ms)
    : depth_(press_depth_m), ramp_ms_(ramp_ms) {
    x_ = WanderTrack::make(rng, duration_ms, 700.0, 0.002);
    y_ = WanderTrack::make(rng, duration_ms, 700.0, 0.002);
    z_ = WanderTrack::make(rng, duration_ms, 700.0, 0.002);
    tremor_ = SinBank::make(rng, 8, 2.0, 15.0, 0.0004);
    rot_x_ = SinBank::make(rng, 3, 1.0, 6.0, 0.03);
    rot_y_ = SinBank::make(rng, 3, 1.0, 6.0, 0.03);
}

DeviceState SyntheticTrajectory::state_at(double t_ms) const {
    auto [e, de] = ramp(t_ms, ramp_ms_);
    auto [px, vx] = x_.eval(t_ms);
    auto [py, vy] = y_.eval(t_ms);
    auto [pz, vz] = z_.eval(t_ms);
    DeviceState s;
    s.P_HIP = {px * e, py * e, (pz + depth_) * e + tremor_.value(t_ms)};
    s.V_HIP = {vx * e + px * de, vy * e + py * de,
               vz * e + (pz + depth_) * de + tremor_.deriv(t_ms)};
    Vec3 theta{rot_x_.value(t_ms), rot_y_.value(t_ms), 0.0};
    s.U_HIP = quat_from_rotation_vector(theta);
    s.W_HIP = {rot_x_.deriv(t_ms), rot_y_.deriv(t_ms), 0.0};
    return s;
}

CsvTrajectory::CsvTrajectory(std::vector<TrajectorySample> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw std::invalid_argument("trajectory must have at least one sample");
}

DeviceState CsvTrajectory::state_at(double t_ms) const {
    auto to_state = [](const TrajectorySample& r) {
        return DeviceState{r.position, r.velocity, r.orientation, r.angular_velocity};
    };
    if (t_ms <= rows_.front().t_ms) return to_state(rows_.front());
    if (t_ms >= rows_.back().t_ms) return to_state(rows_.back());
    auto it = std::upper_bound(rows_.begin(), rows_.end(), t_ms,
                               [](double t, const TrajectorySample& r) { return t < r.t_ms; });
    const TrajectorySample& b = *it;
    const TrajectorySample& a = *(it - 1);
    double u = (t_ms - a.t_ms) / (b.t_ms - a.t_ms);
    DeviceState s;
    s.P_HIP = a.position + (b.position - a.position) * u;
    s.V_HIP = a.velocity + (b.velocity - a.velocity) * u;
    s.W_HIP = a.angular_velocity + (b.angular_velocity - a.angular_velocity) * u;
    Quat qa = a.orientation, qb = b.orientation;
    // Normalized lerp on the same hemisphere (canonical w >= 0 guarantees it).
    Quat q{qa.w + (qb.w - qa.w) * u, qa.x + (qb.x - qa.x) * u, qa.y + (qb.y - qa.y) * u,
           qa.z + (qb.z - qa.z) * u};
    s.U_HIP = q.normalized();
    return s;
}

int CountSchedule::at(double t_ms) const {
    int c = 0;
    for (const auto& [start, count] : events) {
        if (start <= t_ms) c = count;
        else break;
    }
    return c;
}

CountSchedule CountSchedule::constant(int count) {
    CountSchedule s;
    s.events = {{0.0, count}};
    return s;
}

CountSchedule CountSchedule::walk(Rng& rng, double duration_ms, int base, double walk_start_ms,
                                  int jump_to, int lo, int hi) {
    CountSchedule s;
    s.events = {{0.0, base}};
    double t = walk_start_ms;
    int c = jump_to;
    while (t < duration_ms) {
        s.events.emplace_back(t, c);
        t += rng.uniform(100.0, 400.0);
        int step = rng.uniform_int(1, 4) * (rng.uniform() < 0.5 ? 1 : -1);
        c = std::clamp(c + step, lo, hi);
    }
    return s;
}

Vec3 ContactModel::force(const Vec3& p_tool, int count, double t_ms) const {
    if (!enabled || count <= 0) return {};
    double k_eff = k_c * count_scale * count;
    Vec3 f;
    double surface = wall_z + roughness.value(t_ms);
    double gap = p_tool.z - surface;
    if (gap >= 0.0) return f; // clear of the surface
    f.z = -k_eff * gap;
    if (hole_radius > 0.0) {
        double rho = std::sqrt(p_tool.x * p_tool.x + p_tool.y * p_tool.y);
        if (rho > hole_radius) {
            double push = -k_eff * (rho - hole_radius) / rho;
            f.x += push * p_tool.x;
            f.y += push * p_tool.y;
        }
    }
    return f;
}

Scenario make_scenario(const std::string& name, std::uint64_t seed, double duration_ms,
                       double mass) {
    Scenario sc;
    sc.name = name;
    sc.seed = seed;
    if (mass > 0.0) sc.mass = mass;
    Rng rng(seed);
    if (name == "free_space") {
        sc.duration_ms = duration_ms > 0.0 ? duration_ms : 3000.0;
        sc.trajectory = std::make_shared<SyntheticTrajectory>(rng, sc.duration_ms, 0.0, 1000.0);
        sc.counts = CountSchedule::constant(0);
    } else if (name == "peg_contact") {
        sc.duration_ms = duration_ms > 0.0 ? duration_ms : 12000.0;
        sc.trajectory = std::make_shared<SyntheticTrajectory>(rng, sc.duration_ms, -0.012, 1000.0);
        sc.contact.enabled = true;
        sc.contact.hole_radius = 0.0015;
        sc.contact.roughness = SinBank::make(rng, 30, 10.0, 33.0, 0.0015);
        sc.counts = CountSchedule::walk(rng, sc.duration_ms, 2, 1000.0, 2, 1, 4);
    } else if (name == "complex_contact") {
        sc.duration_ms = duration_ms > 0.0 ? duration_ms : 7000.0;
        sc.trajectory = std::make_shared<SyntheticTrajectory>(rng, sc.duration_ms, -0.010, 1000.0);
        sc.contact.enabled = true;
        sc.contact.roughness = SinBank::make(rng, 30, 10.0, 33.0, 0.0015);
        sc.counts = CountSchedule::walk(rng, sc.duration_ms, 11, 4700.0, 19, 11, 25);
    } else {
        throw std::invalid_argument("unknown scenario: " + name);
    }
    return sc;
}

} // namespace forcecast
