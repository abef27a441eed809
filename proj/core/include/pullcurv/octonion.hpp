#pragma once

#include <cmath>

#include "pullcurv/quaternion.hpp"

namespace pullcurv {

// Octonion as a Cayley-Dickson pair (a, b) of quaternions.
// The product is NOT associative; norm multiplicativity |pq| = |p||q| still holds.
struct Octonion {
    Quaternion a, b;

    constexpr Octonion() = default;
    constexpr Octonion(const Quaternion& a_, const Quaternion& b_) : a(a_), b(b_) {}

    static constexpr Octonion identity() { return {Quaternion::identity(), Quaternion()}; }

    constexpr Octonion operator+(const Octonion& o) const { return {a + o.a, b + o.b}; }
    constexpr Octonion operator-(const Octonion& o) const { return {a - o.a, b - o.b}; }
    constexpr Octonion operator-() const { return {-a, -b}; }
    constexpr Octonion operator*(double s) const { return {a * s, b * s}; }
    constexpr Octonion operator/(double s) const { return {a / s, b / s}; }

    // Cayley-Dickson product: (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)).
    constexpr Octonion operator*(const Octonion& o) const {
        return {a * o.a - o.b.conj() * b, o.b * a + b * o.a.conj()};
    }

    constexpr Octonion conj() const { return {a.conj(), -b}; }
    constexpr double norm_sq() const { return a.norm_sq() + b.norm_sq(); }
    double norm() const { return std::sqrt(norm_sq()); }
    constexpr double re() const { return a.w; }

    Octonion normalized() const {
        const double n = norm();
        return {a / n, b / n};
    }

    // Norm of the imaginary part.
    double im_norm() const {
        return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z + b.norm_sq());
    }

    // Polar angle t in [0, pi] of a unit octonion q = cos(t) + alpha sin(t).
    double angle() const { return std::atan2(im_norm(), a.w); }

    // Imaginary axis alpha with |alpha| = 1; only meaningful when im_norm() > 0.
    Octonion axis() const {
        const double n = im_norm();
        return {Quaternion(0.0, a.x / n, a.y / n, a.z / n), b / n};
    }
};

inline constexpr Octonion operator*(double s, const Octonion& q) { return q * s; }

inline constexpr double dot(const Octonion& p, const Octonion& q) {
    return dot(p.a, q.a) + dot(p.b, q.b);
}

// n-th power of a unit octonion via the angle/axis decomposition:
// q = cos(t) + alpha sin(t)  ->  q^n = cos(nt) + alpha sin(nt).
// Powers live in the associative subalgebra spanned by {1, alpha}, so this
// agrees with repeated multiplication while avoiding associativity pitfalls.
inline Octonion cayley_pow(int n, const Octonion& q) {
    const double t = q.angle();
    const double s = q.im_norm();
    if (s < 1e-14) {
        // q = +-1 up to roundoff; the power is (+-1)^n exactly.
        const double r = (q.a.w >= 0.0) ? 1.0 : ((n % 2 == 0) ? 1.0 : -1.0);
        return {Quaternion(r, 0, 0, 0), Quaternion()};
    }
    const Octonion alpha = q.axis();
    return Octonion(Quaternion(std::cos(n * t), 0, 0, 0), Quaternion()) +
           alpha * std::sin(n * t);
}

}  // namespace pullcurv
