#pragma once

#include <cmath>
#include <stdexcept>

namespace forcecast {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Unit quaternion, canonical sign w >= 0 (double cover resolved on construction).
struct Quat {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

    // Normalizes and flips to the w >= 0 hemisphere. Throws on a near-zero quaternion.
    Quat normalized() const {
        double n = norm();
        if (!(n > 1e-12)) throw std::invalid_argument("quaternion norm too small to normalize");
        double s = 1.0 / n;
        Quat q{w * s, x * s, y * s, z * s};
        if (q.w < 0.0) { q.w = -q.w; q.x = -q.x; q.y = -q.y; q.z = -q.z; }
        return q;
    }

    Quat conjugate() const { return {w, -x, -y, -z}; }

    // Hamilton product.
    Quat operator*(const Quat& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }
};

// Axis-angle vector (rad) -> unit quaternion.
Quat quat_from_rotation_vector(const Vec3& v);

// Log map of the relative rotation b^-1 * a, returned as an axis-angle vector
// with magnitude in [0, pi]. This is the rotational spring error between two
// orientations; antisymmetric in its arguments.
Vec3 rotation_vector_between(const Quat& a, const Quat& b);

} // namespace forcecast
