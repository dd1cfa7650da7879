#include "forcecast/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace forcecast {

namespace {

constexpr const char* kTraceHeader = "t_ms,fx,fy,fz,tx,ty,tz";
constexpr const char* kTrajectoryHeader = "t_ms,px,py,pz,qw,qx,qy,qz,vx,vy,vz,wx,wy,wz";
constexpr const char* kMetaHeader = "t_ms,physics_period_ms,contact_count,displacement_m";

std::vector<double> parse_row(const std::string& line, std::size_t expected, int line_no) {
    std::vector<double> out;
    out.reserve(expected);
    const char* p = line.data();
    const char* end = p + line.size();
    while (p <= end) {
        const char* comma = p;
        while (comma < end && *comma != ',') ++comma;
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(p, comma, v);
        if (ec != std::errc() || ptr != comma)
            throw std::invalid_argument("CSV line " + std::to_string(line_no) + ": bad numeric field");
        out.push_back(v);
        if (comma == end) break;
        p = comma + 1;
    }
    if (out.size() != expected)
        throw std::invalid_argument("CSV line " + std::to_string(line_no) + ": expected " +
                                    std::to_string(expected) + " fields, got " + std::to_string(out.size()));
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary); // binary: keep LF endings everywhere
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    return f;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    return f;
}

void expect_header(std::istream& is, const char* header) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("empty CSV input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header)
        throw std::invalid_argument(std::string("unexpected CSV header: ") + line);
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("double formatting failed");
    return std::string(buf, ptr);
}

void write_trace_csv(std::ostream& os, const Trace& trace) {
    os << kTraceHeader << '\n';
    for (const auto& s : trace.samples) {
        os << format_double(s.t_ms) << ',' << format_double(s.wrench.force.x) << ','
           << format_double(s.wrench.force.y) << ',' << format_double(s.wrench.force.z) << ','
           << format_double(s.wrench.torque.x) << ',' << format_double(s.wrench.torque.y) << ','
           << format_double(s.wrench.torque.z) << '\n';
    }
}

void write_trace_csv(const std::string& path, const Trace& trace) {
    auto f = open_out(path);
    write_trace_csv(f, trace);
}

Trace read_trace_csv(std::istream& is) {
    expect_header(is, kTraceHeader);
    Trace t;
    std::string line;
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto v = parse_row(line, 7, line_no);
        t.append({v[0], {{v[1], v[2], v[3]}, {v[4], v[5], v[6]}}});
    }
    return t;
}

Trace read_trace_csv(const std::string& path) {
    auto f = open_in(path);
    return read_trace_csv(f);
}

void write_trajectory_csv(const std::string& path, const std::vector<TrajectorySample>& rows) {
    auto f = open_out(path);
    f << kTrajectoryHeader << '\n';
    for (const auto& r : rows) {
        f << format_double(r.t_ms) << ',' << format_double(r.position.x) << ','
          << format_double(r.position.y) << ',' << format_double(r.position.z) << ','
          << format_double(r.orientation.w) << ',' << format_double(r.orientation.x) << ','
          << format_double(r.orientation.y) << ',' << format_double(r.orientation.z) << ','
          << format_double(r.velocity.x) << ',' << format_double(r.velocity.y) << ','
          << format_double(r.velocity.z) << ',' << format_double(r.angular_velocity.x) << ','
          << format_double(r.angular_velocity.y) << ',' << format_double(r.angular_velocity.z) << '\n';
    }
}

std::vector<TrajectorySample> read_trajectory_csv(const std::string& path) {
    auto f = open_in(path);
    expect_header(f, kTrajectoryHeader);
    std::vector<TrajectorySample> rows;
    std::string line;
    int line_no = 1;
    double prev_t = -1.0;
    while (std::getline(f, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto v = parse_row(line, 14, line_no);
        if (v[0] <= prev_t)
            throw std::invalid_argument("trajectory timestamps must be strictly increasing");
        prev_t = v[0];
        Quat q{v[4], v[5], v[6], v[7]};
        if (std::abs(q.norm() - 1.0) > 1e-6)
            throw std::invalid_argument("trajectory line " + std::to_string(line_no) +
                                        ": quaternion is not unit norm");
        rows.push_back({v[0], {v[1], v[2], v[3]}, q.normalized(),
                        {v[8], v[9], v[10]}, {v[11], v[12], v[13]}});
    }
    return rows;
}

void write_meta_csv(const std::string& path, const std::vector<MetaRow>& rows) {
    auto f = open_out(path);
    f << kMetaHeader << '\n';
    for (const auto& r : rows) {
        f << format_double(r.t_ms) << ',' << format_double(r.physics_period_ms) << ','
          << r.contact_count << ',' << format_double(r.displacement_m) << '\n';
    }
}

} // namespace forcecast
