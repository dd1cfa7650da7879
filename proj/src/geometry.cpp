#include "forcecast/geometry.hpp"

namespace forcecast {

Quat quat_from_rotation_vector(const Vec3& v) {
    double angle = v.norm();
    if (angle < 1e-12) {
        // sin(a/2)/a -> 1/2 as a -> 0
        return Quat{1.0, 0.5 * v.x, 0.5 * v.y, 0.5 * v.z}.normalized();
    }
    double half = 0.5 * angle;
    double s = std::sin(half) / angle;
    return Quat{std::cos(half), v.x * s, v.y * s, v.z * s}.normalized();
}

Vec3 rotation_vector_between(const Quat& a, const Quat& b) {
    // Bitwise-identical orientations carry exactly zero spring error; the
    // Hamilton product would otherwise leave ~1e-18 rounding residue.
    if (a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z) return {};
    Quat rel = (b.conjugate() * a).normalized(); // w >= 0, so angle <= pi
    double vn = std::sqrt(rel.x * rel.x + rel.y * rel.y + rel.z * rel.z);
    if (vn < 1e-12) {
        // Small rotation: q = (1, v/2) to first order, so the vector part doubles.
        return {2.0 * rel.x, 2.0 * rel.y, 2.0 * rel.z};
    }
    double angle = 2.0 * std::atan2(vn, rel.w);
    double s = angle / vn;
    return {rel.x * s, rel.y * s, rel.z * s};
}

} // namespace forcecast
