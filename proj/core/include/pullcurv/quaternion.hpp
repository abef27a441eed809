#pragma once

#include <cmath>

namespace pullcurv {

// Quaternion q = w + x*i + y*j + z*k with the Hamilton product.
// Multiplication is associative and norm-multiplicative: |pq| = |p||q|.
struct Quaternion {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr Quaternion identity() { return {1.0, 0.0, 0.0, 0.0}; }
    static constexpr Quaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }

    constexpr Quaternion operator+(const Quaternion& o) const {
        return {w + o.w, x + o.x, y + o.y, z + o.z};
    }
    constexpr Quaternion operator-(const Quaternion& o) const {
        return {w - o.w, x - o.x, y - o.y, z - o.z};
    }
    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

    constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
    constexpr Quaternion operator/(double s) const { return {w / s, x / s, y / s, z / s}; }

    // Hamilton product: i*j = k, j*k = i, k*i = j, i*i = -1.
    constexpr Quaternion operator*(const Quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }

    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
    constexpr double norm_sq() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm_sq()); }
    constexpr double re() const { return w; }
    constexpr Quaternion im() const { return {0.0, x, y, z}; }

    Quaternion normalized() const {
        const double n = norm();
        return {w / n, x / n, y / n, z / n};
    }
    constexpr Quaternion inverse() const {
        const double n2 = norm_sq();
        return {w / n2, -x / n2, -y / n2, -z / n2};
    }
};

inline constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

// Real part of conj(p) * q; the Euclidean inner product on R^4.
inline constexpr double dot(const Quaternion& p, const Quaternion& q) {
    return p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z;
}

// Integer power by repeated multiplication (used by the suspension maps).
inline Quaternion quat_pow(const Quaternion& q, int k) {
    if (k < 0) return quat_pow(q.inverse(), -k);
    Quaternion r = Quaternion::identity();
    Quaternion base = q;
    for (int e = k; e > 0; e >>= 1) {
        if (e & 1) r = r * base;
        base = base * base;
    }
    return r;
}

}  // namespace pullcurv
