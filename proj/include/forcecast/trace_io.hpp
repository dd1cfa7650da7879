#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "forcecast/wrench.hpp"

namespace forcecast {

// Device-side trajectory sample loaded from or written to CSV.
struct TrajectorySample {
    double t_ms = 0.0;
    Vec3 position;      // m
    Quat orientation;   // unit
    Vec3 velocity;      // m/s
    Vec3 angular_velocity; // rad/s
};

// Per-physics-tick bookkeeping exported alongside the force traces.
struct MetaRow {
    double t_ms = 0.0;
    double physics_period_ms = 0.0;
    int contact_count = 0;
    double displacement_m = 0.0; // |P_tool - P_HIP|
};

// Shortest round-trip decimal form (std::to_chars) so CSV output is
// byte-stable and parses back to the identical double.
std::string format_double(double v);

// Trace CSV: header "t_ms,fx,fy,fz,tx,ty,tz", LF line endings.
void write_trace_csv(std::ostream& os, const Trace& trace);
void write_trace_csv(const std::string& path, const Trace& trace);
Trace read_trace_csv(std::istream& is);
Trace read_trace_csv(const std::string& path);

// Trajectory CSV: header "t_ms,px,py,pz,qw,qx,qy,qz,vx,vy,vz,wx,wy,wz".
// Quaternions must be unit within 1e-6 or the row is rejected.
void write_trajectory_csv(const std::string& path, const std::vector<TrajectorySample>& rows);
std::vector<TrajectorySample> read_trajectory_csv(const std::string& path);

// Meta CSV: header "t_ms,physics_period_ms,contact_count,displacement_m".
void write_meta_csv(const std::string& path, const std::vector<MetaRow>& rows);

} // namespace forcecast
