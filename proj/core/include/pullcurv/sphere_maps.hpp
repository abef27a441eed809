#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "pullcurv/errors.hpp"
#include "pullcurv/octonion.hpp"
#include "pullcurv/quaternion.hpp"

namespace pullcurv {

// Explicit sphere maps used by every example bundle.
//
// Ambient models:
//   S^3  - unit quaternions
//   S^4  - unit vectors of R x H, written as (x, y) with x real, y a quaternion
//   S^7  - unit pairs (a, b) of quaternions (also the unit octonions)
//   S^2  - unit purely imaginary quaternions

struct S4Point {
    double x = 0.0;
    Quaternion y;

    double norm_sq() const { return x * x + y.norm_sq(); }
};

// Raw Hopf formulas; they extend smoothly off the sphere and back the
// constraint plumbing (Newton iterates evaluate them off-sphere).
inline S4Point hopf_s7_s4_raw(const Quaternion& a, const Quaternion& b) {
    return {a.norm_sq() - b.norm_sq(), 2.0 * (a * b.conj())};
}

inline S4Point dual_hopf_s7_s4_raw(const Quaternion& a, const Quaternion& b) {
    return {a.norm_sq() - b.norm_sq(), 2.0 * (a.conj() * b)};
}

inline void require_unit_pair(const Quaternion& a, const Quaternion& b) {
    if (std::abs(a.norm_sq() + b.norm_sq() - 1.0) > 1e-9)
        throw DomainError("hopf map: input pair is not unit");
}

// Hopf map for the right S^3-action (a,b)q on S^7:
//   h(a,b) = (|a|^2 - |b|^2, 2 a conj(b)).
// Constant on right orbits; unit input required.
inline S4Point hopf_s7_s4(const Quaternion& a, const Quaternion& b) {
    require_unit_pair(a, b);
    return hopf_s7_s4_raw(a, b);
}

// Dual Hopf map for the left S^3-action q(a,b):
//   h~(a,b) = (|a|^2 - |b|^2, 2 conj(a) b).
inline S4Point dual_hopf_s7_s4(const Quaternion& a, const Quaternion& b) {
    require_unit_pair(a, b);
    return dual_hopf_s7_s4_raw(a, b);
}

// Hopf map S^3 -> S^2 extended to all quaternions: eta(y) = y i conj(y).
// The image is purely imaginary with |eta(y)| = |y|^2.
inline Quaternion hopf_s3_s2(const Quaternion& y) {
    return y * Quaternion::unit_i() * y.conj();
}

inline S4Point antipodal(const S4Point& p) { return {-p.x, -p.y}; }

// Suspension of the quaternion k-th power map:
//   phi_k(x, y) = (x, y^k) / sqrt(x^2 + |y|^(2k)).
// Fixes the poles (+-1, 0); k = 0 is rejected as degenerate.
inline S4Point quat_pow_suspension(int k, const S4Point& p) {
    if (k == 0) throw std::invalid_argument("quat_pow_suspension: k = 0 is degenerate");
    const Quaternion yk = quat_pow(p.y, k);
    const double n = std::sqrt(p.x * p.x + yk.norm_sq());
    return {p.x / n, yk / n};
}

// Octonion power map on S^7 (cayley_pow lives in octonion.hpp).

// Splitting helpers between S^7-as-octonion and quaternion pairs.
inline Octonion s7_from_pair(const Quaternion& a, const Quaternion& b) { return {a, b}; }

inline S4Point hopf_s7_s4(const Octonion& q) { return hopf_s7_s4_raw(q.a, q.b); }

// The smooth suspension of eta used for the 8-sphere example:
//   psi(x, lambda, y) = (x, lambda + eta(y)) in H x H,
// with |psi|^2 = |x|^2 + lambda^2 + |y|^4; normalizing gives a map S^8 -> S^7.
inline std::pair<Quaternion, Quaternion> susp8_psi(const Quaternion& x, double lambda,
                                                   const Quaternion& y) {
    return {x, Quaternion(lambda, 0, 0, 0) + hopf_s3_s2(y)};
}

inline Octonion susp8_phi(const Quaternion& x, double lambda, const Quaternion& y) {
    auto [u, v] = susp8_psi(x, lambda, y);
    return Octonion(u, v).normalized();
}

}  // namespace pullcurv
