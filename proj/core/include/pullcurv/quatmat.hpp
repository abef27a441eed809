#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "pullcurv/embedding.hpp"
#include "pullcurv/quaternion.hpp"
#include "pullcurv/rng.hpp"

namespace pullcurv {

// 2x2 quaternionic matrices in the Sp(2) column layout x = [a; b; c; d],
// columns (a,b) and (c,d). Used for group-theoretic oracles: one-parameter
// subgroups, Lie brackets, translations.
struct QuatMat2 {
    Quaternion a, b, c, d;

    static QuatMat2 from_vec(const Eigen::VectorXd& x) {
        return {to_quat(x.segment(0, 4)), to_quat(x.segment(4, 4)), to_quat(x.segment(8, 4)),
                to_quat(x.segment(12, 4))};
    }
    Eigen::VectorXd to_vec() const {
        Eigen::VectorXd x(16);
        x.segment(0, 4) = pullcurv::to_vec(a);
        x.segment(4, 4) = pullcurv::to_vec(b);
        x.segment(8, 4) = pullcurv::to_vec(c);
        x.segment(12, 4) = pullcurv::to_vec(d);
        return x;
    }

    QuatMat2 operator*(const QuatMat2& o) const {
        return {a * o.a + c * o.b, b * o.a + d * o.b, a * o.c + c * o.d, b * o.c + d * o.d};
    }
    QuatMat2 operator+(const QuatMat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    QuatMat2 operator*(double s) const { return {a * s, b * s, c * s, d * s}; }

    static QuatMat2 eye() {
        return {Quaternion::identity(), Quaternion(), Quaternion(), Quaternion::identity()};
    }

    double norm() const { return to_vec().norm(); }
};

inline QuatMat2 qm_commutator(const QuatMat2& x, const QuatMat2& y) {
    return x * y + (y * x) * (-1.0);
}

// Matrix exponential by scaling and squaring with a Taylor tail.
inline QuatMat2 qm_exp(QuatMat2 v) {
    int squarings = 0;
    while (v.norm() > 0.25) {
        v = v * 0.5;
        ++squarings;
    }
    QuatMat2 sum = QuatMat2::eye();
    QuatMat2 term = QuatMat2::eye();
    for (int k = 1; k <= 20; ++k) {
        term = term * v * (1.0 / k);
        sum = sum + term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

// Random element of sp(2): quaternionic skew-hermitian.
inline QuatMat2 random_sp2_algebra(Rng& rng) {
    const Quaternion alpha = rng.gaussian_quaternion().im();
    const Quaternion delta = rng.gaussian_quaternion().im();
    const Quaternion beta = rng.gaussian_quaternion();
    return {alpha, beta * -1.0, beta.conj(), delta};
}

}  // namespace pullcurv
