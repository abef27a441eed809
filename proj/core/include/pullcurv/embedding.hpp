#pragma once

#include <Eigen/Dense>

#include "pullcurv/octonion.hpp"
#include "pullcurv/quaternion.hpp"

namespace pullcurv {

using Eigen::Matrix4d;
using Eigen::Vector4d;
using Eigen::VectorXd;

// Coordinate conventions:
//   quaternion  -> (w, x, y, z)
//   S^7 in H^2  -> [a; b]                (8 coords)
//   S^4 in RxH  -> [x; y]                (5 coords)
//   S^8 in HxRxH-> [x; lambda; y]        (9 coords)

inline Vector4d to_vec(const Quaternion& q) { return {q.w, q.x, q.y, q.z}; }

inline Quaternion to_quat(const Eigen::Ref<const VectorXd>& v) {
    return {v[0], v[1], v[2], v[3]};
}

inline VectorXd to_vec(const Octonion& o) {
    VectorXd v(8);
    v << o.a.w, o.a.x, o.a.y, o.a.z, o.b.w, o.b.x, o.b.y, o.b.z;
    return v;
}

inline Octonion to_oct(const Eigen::Ref<const VectorXd>& v) {
    return {to_quat(v.head(4)), to_quat(v.tail(4))};
}

// Left-multiplication matrix: to_vec(q * p) = left_mul(q) * to_vec(p).
inline Matrix4d left_mul(const Quaternion& q) {
    Matrix4d L;
    L << q.w, -q.x, -q.y, -q.z,
         q.x,  q.w, -q.z,  q.y,
         q.y,  q.z,  q.w, -q.x,
         q.z, -q.y,  q.x,  q.w;
    return L;
}

// Right-multiplication matrix: to_vec(q * p) = right_mul(p) * to_vec(q).
inline Matrix4d right_mul(const Quaternion& p) {
    Matrix4d R;
    R << p.w, -p.x, -p.y, -p.z,
         p.x,  p.w,  p.z, -p.y,
         p.y, -p.z,  p.w,  p.x,
         p.z,  p.y, -p.x,  p.w;
    return R;
}

inline Matrix4d conj_matrix() {
    Matrix4d C = Matrix4d::Identity();
    C(1, 1) = C(2, 2) = C(3, 3) = -1.0;
    return C;
}

}  // namespace pullcurv
