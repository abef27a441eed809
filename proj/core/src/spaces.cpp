#include "pullcurv/spaces.hpp"

#include <cmath>

#include "pullcurv/embedding.hpp"
#include "pullcurv/errors.hpp"
#include "pullcurv/sphere_maps.hpp"

namespace pullcurv::spaces {

using Eigen::Matrix4d;
using Eigen::Vector4d;

AmbientMap sphere_constraint(int ambient_dim, double radius) {
    AmbientMap c;
    c.in_dim = ambient_dim;
    c.out_dim = 1;
    const double r2 = radius * radius;
    c.value = [r2](const VectorXd& x) {
        VectorXd out(1);
        out[0] = x.squaredNorm() - r2;
        return out;
    };
    c.jac = [](const VectorXd& x) -> MatrixXd { return 2.0 * x.transpose(); };
    c.hess_quad = [](const VectorXd&, const VectorXd& u, const VectorXd& v) {
        VectorXd out(1);
        out[0] = 2.0 * u.dot(v);
        return out;
    };
    return c;
}

AmbientMap hopf_map() {
    AmbientMap m;
    m.in_dim = 8;
    m.out_dim = 5;
    m.value = [](const VectorXd& x) {
        const Quaternion a = to_quat(x.head(4)), b = to_quat(x.tail(4));
        const S4Point p = pullcurv::hopf_s7_s4_raw(a, b);
        VectorXd out(5);
        out[0] = p.x;
        out.tail(4) = to_vec(p.y);
        return out;
    };
    m.jac = [](const VectorXd& x) {
        const Quaternion a = to_quat(x.head(4)), b = to_quat(x.tail(4));
        MatrixXd J(5, 8);
        J.row(0).head(4) = 2.0 * x.head(4).transpose();
        J.row(0).tail(4) = -2.0 * x.tail(4).transpose();
        J.block(1, 0, 4, 4) = 2.0 * right_mul(b.conj());
        J.block(1, 4, 4, 4) = 2.0 * left_mul(a) * conj_matrix();
        return J;
    };
    m.hess_quad = [](const VectorXd&, const VectorXd& u, const VectorXd& v) {
        const Quaternion ua = to_quat(u.head(4)), ub = to_quat(u.tail(4));
        const Quaternion va = to_quat(v.head(4)), vb = to_quat(v.tail(4));
        VectorXd out(5);
        out[0] = 2.0 * (dot(ua, va) - dot(ub, vb));
        out.tail(4) = to_vec(2.0 * (ua * vb.conj() + va * ub.conj()));
        return out;
    };
    return m;
}

AmbientMap dual_hopf_map() {
    AmbientMap m;
    m.in_dim = 8;
    m.out_dim = 5;
    m.value = [](const VectorXd& x) {
        const Quaternion a = to_quat(x.head(4)), b = to_quat(x.tail(4));
        const S4Point p = pullcurv::dual_hopf_s7_s4_raw(a, b);
        VectorXd out(5);
        out[0] = p.x;
        out.tail(4) = to_vec(p.y);
        return out;
    };
    m.jac = [](const VectorXd& x) {
        const Quaternion a = to_quat(x.head(4)), b = to_quat(x.tail(4));
        MatrixXd J(5, 8);
        J.row(0).head(4) = 2.0 * x.head(4).transpose();
        J.row(0).tail(4) = -2.0 * x.tail(4).transpose();
        J.block(1, 0, 4, 4) = 2.0 * right_mul(b) * conj_matrix();
        J.block(1, 4, 4, 4) = 2.0 * left_mul(a.conj());
        return J;
    };
    m.hess_quad = [](const VectorXd&, const VectorXd& u, const VectorXd& v) {
        const Quaternion ua = to_quat(u.head(4)), ub = to_quat(u.tail(4));
        const Quaternion va = to_quat(v.head(4)), vb = to_quat(v.tail(4));
        VectorXd out(5);
        out[0] = 2.0 * (dot(ua, va) - dot(ub, vb));
        out.tail(4) = to_vec(2.0 * (ua.conj() * vb + va.conj() * ub));
        return out;
    };
    return m;
}

AmbientMap eta_map() {
    AmbientMap m;
    m.in_dim = 4;
    m.out_dim = 4;
    m.value = [](const VectorXd& x) { return to_vec(pullcurv::hopf_s3_s2(to_quat(x))); };
    m.jac = [](const VectorXd& x) -> MatrixXd {
        const Quaternion y = to_quat(x);
        const Quaternion i = Quaternion::unit_i();
        return right_mul(i * y.conj()) + left_mul(y * i) * conj_matrix();
    };
    m.hess_quad = [](const VectorXd&, const VectorXd& u, const VectorXd& v) {
        const Quaternion uq = to_quat(u), vq = to_quat(v);
        const Quaternion i = Quaternion::unit_i();
        return to_vec(uq * i * vq.conj() + vq * i * uq.conj());
    };
    return m;
}

AmbientMap antipodal_map(int dim) { return linear_map(-MatrixXd::Identity(dim, dim)); }

namespace {

AmbientMap quat_inverse_map() {
    AmbientMap m;
    m.in_dim = 4;
    m.out_dim = 4;
    m.value = [](const VectorXd& x) -> VectorXd { return to_vec(to_quat(x).inverse()); };
    m.jac = [](const VectorXd& x) -> MatrixXd {
        const double n = x.squaredNorm();
        const VectorXd cy = to_vec(to_quat(x).conj());
        MatrixXd J = conj_matrix() / n;
        J.noalias() -= (2.0 / (n * n)) * cy * x.transpose();
        return J;
    };
    return m;
}

AmbientMap quat_positive_power_map(int k) {
    AmbientMap m;
    m.in_dim = 4;
    m.out_dim = 4;
    m.value = [k](const VectorXd& x) { return to_vec(quat_pow(to_quat(x), k)); };
    m.jac = [k](const VectorXd& x) {
        const Quaternion y = to_quat(x);
        // d(y^k)(v) = sum_i y^i v y^(k-1-i)
        MatrixXd J = MatrixXd::Zero(4, 4);
        for (int i = 0; i < k; ++i)
            J += left_mul(quat_pow(y, i)) * right_mul(quat_pow(y, k - 1 - i));
        return J;
    };
    return m;
}

}  // namespace

AmbientMap quat_power_map(int k) {
    if (k == 0) throw DomainError("quat_power_map: k = 0 is degenerate");
    if (k > 0) return quat_positive_power_map(k);
    return compose(quat_positive_power_map(-k), quat_inverse_map());
}

AmbientMap suspension_power_map(int k) {
    if (k == 0) throw DomainError("suspension_power_map: k = 0 is degenerate");
    const AmbientMap pw = quat_power_map(k);
    AmbientMap pre;
    pre.in_dim = 5;
    pre.out_dim = 5;
    pre.value = [pw](const VectorXd& x) {
        VectorXd out(5);
        out[0] = x[0];
        out.tail(4) = pw.value(x.tail(4));
        return out;
    };
    pre.jac = [pw](const VectorXd& x) {
        MatrixXd J = MatrixXd::Zero(5, 5);
        J(0, 0) = 1.0;
        J.bottomRightCorner(4, 4) = pw.jac(x.tail(4));
        return J;
    };
    return compose(normalize_map(5), pre);
}

AmbientMap cayley_power_map(int n) {
    AmbientMap m;
    m.in_dim = 8;
    m.out_dim = 8;
    m.value = [n](const VectorXd& x) {
        const Octonion q = to_oct(x);
        const double rho = q.im_norm();
        if (rho < 1e-14) {
            VectorXd out = VectorXd::Zero(8);
            out[0] = (q.a.w >= 0.0 || n % 2 == 0) ? 1.0 : -1.0;
            return out;
        }
        const double t = q.angle();
        VectorXd out(8);
        out[0] = std::cos(n * t);
        out.tail(7) = (std::sin(n * t) / rho) * x.tail(7);
        return out;
    };
    m.jac = [n, m](const VectorXd& x) -> MatrixXd {
        const double s = x[0];
        const VectorXd im = x.tail(7);
        const double rho = im.norm();
        if (rho < 1e-7) return fd_jacobian(m.value, x, 8, 1e-6);
        const double r2 = s * s + rho * rho;
        const double t = std::atan2(rho, s);
        const VectorXd mh = im / rho;
        // t and the axis are 0-homogeneous: dt = (-rho ds + s mh.dm) / r2.
        const double cn = std::cos(n * t), sn = std::sin(n * t);
        MatrixXd J = MatrixXd::Zero(8, 8);
        J(0, 0) = -n * sn * (-rho / r2);
        J.row(0).tail(7) = -n * sn * (s / r2) * mh.transpose();
        J.block(1, 0, 7, 1) = n * cn * (-rho / r2) * mh;
        J.bottomRightCorner(7, 7) =
            n * cn * (s / r2) * mh * mh.transpose() +
            (sn / rho) * (MatrixXd::Identity(7, 7) - mh * mh.transpose());
        return J;
    };
    return m;
}

AmbientMap susp8_phi_map() {
    const AmbientMap eta = eta_map();
    AmbientMap pre;
    pre.in_dim = 9;
    pre.out_dim = 8;
    pre.value = [eta](const VectorXd& x) {
        VectorXd out(8);
        out.head(4) = x.head(4);
        out.tail(4) = eta.value(x.tail(4));
        out[4] += x[4];
        return out;
    };
    pre.jac = [eta](const VectorXd& x) {
        MatrixXd J = MatrixXd::Zero(8, 9);
        J.topLeftCorner(4, 4).setIdentity();
        J(4, 4) = 1.0;
        J.bottomRightCorner(4, 4) = eta.jac(x.tail(4));
        return J;
    };
    return compose(normalize_map(8), pre);
}

AmbientMap kervaire_map(int n, double floor) {
    const int half = 2 * n + 1;
    AmbientMap m;
    m.in_dim = 2 * half;
    m.out_dim = half;
    m.value = [half, floor](const VectorXd& p) -> VectorXd {
        const VectorXd x = p.head(half), y = p.tail(half);
        if (y.norm() < floor)
            throw DomainError("kervaire map: |y| below the singular-locus floor");
        if (x.norm() < floor)
            throw DomainError("kervaire map: |x| below the singular-locus floor");
        const VectorXd u = x / x.norm(), w = y / y.norm();
        return u - 2.0 * w.dot(u) * w;
    };
    m.jac = [half, floor](const VectorXd& p) -> MatrixXd {
        const VectorXd x = p.head(half), y = p.tail(half);
        const double xn = x.norm(), yn = y.norm();
        if (yn < floor || xn < floor)
            throw DomainError("kervaire map: differential at the singular locus");
        const VectorXd u = x / xn, w = y / yn;
        const MatrixXd I = MatrixXd::Identity(half, half);
        const MatrixXd du = (I - u * u.transpose()) / xn;
        const MatrixXd dw = (I - w * w.transpose()) / yn;
        MatrixXd J(half, 2 * half);
        J.leftCols(half) = (I - 2.0 * w * w.transpose()) * du;
        J.rightCols(half) = -2.0 * (w * u.transpose() + w.dot(u) * I) * dw;
        return J;
    };
    return m;
}

ManifoldPtr sphere(int ambient_dim, double radius, bool analytic, std::string name) {
    if (name.empty()) name = "S^" + std::to_string(ambient_dim - 1);
    AmbientMap c = sphere_constraint(ambient_dim, radius);
    if (!analytic) c = c.without_analytic();
    return std::make_shared<EmbeddedManifold>(name, ambient_dim, ambient_dim - 1, std::move(c));
}

ManifoldPtr product(const ManifoldPtr& a, const ManifoldPtr& b, std::string name) {
    if (name.empty()) name = a->name() + "x" + b->name();
    return std::make_shared<EmbeddedManifold>(
        name, a->ambient_dim() + b->ambient_dim(), a->dim() + b->dim(),
        direct_sum(a->constraints(), b->constraints()));
}

ManifoldPtr sp2_manifold() {
    AmbientMap c;
    c.in_dim = 16;
    c.out_dim = 6;
    // Columns (a,b) and (c,d): unit norms plus conj(a)c + conj(b)d = 0.
    c.value = [](const VectorXd& x) {
        const Quaternion a = to_quat(x.segment(0, 4)), b = to_quat(x.segment(4, 4));
        const Quaternion cc = to_quat(x.segment(8, 4)), d = to_quat(x.segment(12, 4));
        VectorXd out(6);
        out[0] = a.norm_sq() + b.norm_sq() - 1.0;
        out[1] = cc.norm_sq() + d.norm_sq() - 1.0;
        out.tail(4) = to_vec(a.conj() * cc + b.conj() * d);
        return out;
    };
    c.jac = [](const VectorXd& x) {
        const Quaternion a = to_quat(x.segment(0, 4)), b = to_quat(x.segment(4, 4));
        const Quaternion cc = to_quat(x.segment(8, 4)), d = to_quat(x.segment(12, 4));
        MatrixXd J = MatrixXd::Zero(6, 16);
        J.row(0).segment(0, 8) = 2.0 * x.segment(0, 8).transpose();
        J.row(1).segment(8, 8) = 2.0 * x.segment(8, 8).transpose();
        const Matrix4d C = conj_matrix();
        J.block(2, 0, 4, 4) = right_mul(cc) * C;
        J.block(2, 4, 4, 4) = right_mul(d) * C;
        J.block(2, 8, 4, 4) = left_mul(a.conj());
        J.block(2, 12, 4, 4) = left_mul(b.conj());
        return J;
    };
    c.hess_quad = [](const VectorXd&, const VectorXd& u, const VectorXd& v) {
        const Quaternion ua = to_quat(u.segment(0, 4)), ub = to_quat(u.segment(4, 4));
        const Quaternion uc = to_quat(u.segment(8, 4)), ud = to_quat(u.segment(12, 4));
        const Quaternion va = to_quat(v.segment(0, 4)), vb = to_quat(v.segment(4, 4));
        const Quaternion vc = to_quat(v.segment(8, 4)), vd = to_quat(v.segment(12, 4));
        VectorXd out(6);
        out[0] = 2.0 * u.segment(0, 8).dot(v.segment(0, 8));
        out[1] = 2.0 * u.segment(8, 8).dot(v.segment(8, 8));
        out.tail(4) = to_vec(ua.conj() * vc + va.conj() * uc + ub.conj() * vd + vb.conj() * ud);
        return out;
    };
    return std::make_shared<EmbeddedManifold>("Sp(2)", 16, 10, std::move(c));
}

ManifoldPtr wilhelm_manifold(int m) {
    if (m < 2) throw DomainError("wilhelm_manifold: m >= 2 required");
    const AmbientMap h = hopf_map();
    const AmbientMap ht = dual_hopf_map();
    const int amb = 8 * m;

    AmbientMap c;
    c.in_dim = amb;
    c.out_dim = m + 5 * (m - 1);
    c.value = [m, h, ht](const VectorXd& x) {
        VectorXd out(m + 5 * (m - 1));
        for (int i = 0; i < m; ++i) out[i] = x.segment(8 * i, 8).squaredNorm() - 1.0;
        int row = m;
        // h(u1) = a h(u2), then h~(u_i) = a h(u_{i+1}) for i >= 2.
        out.segment(row, 5) = h.value(x.segment(0, 8)) + h.value(x.segment(8, 8));
        row += 5;
        for (int i = 1; i + 1 < m; ++i) {
            out.segment(row, 5) =
                ht.value(x.segment(8 * i, 8)) + h.value(x.segment(8 * (i + 1), 8));
            row += 5;
        }
        return out;
    };
    c.jac = [m, h, ht, amb](const VectorXd& x) {
        MatrixXd J = MatrixXd::Zero(m + 5 * (m - 1), amb);
        for (int i = 0; i < m; ++i)
            J.row(i).segment(8 * i, 8) = 2.0 * x.segment(8 * i, 8).transpose();
        int row = m;
        J.block(row, 0, 5, 8) = h.jac(x.segment(0, 8));
        J.block(row, 8, 5, 8) = h.jac(x.segment(8, 8));
        row += 5;
        for (int i = 1; i + 1 < m; ++i) {
            J.block(row, 8 * i, 5, 8) = ht.jac(x.segment(8 * i, 8));
            J.block(row, 8 * (i + 1), 5, 8) = h.jac(x.segment(8 * (i + 1), 8));
            row += 5;
        }
        return J;
    };
    c.hess_quad = [m, h, ht](const VectorXd& x, const VectorXd& u, const VectorXd& v) {
        VectorXd out(m + 5 * (m - 1));
        for (int i = 0; i < m; ++i) out[i] = 2.0 * u.segment(8 * i, 8).dot(v.segment(8 * i, 8));
        int row = m;
        out.segment(row, 5) =
            h.hess_quad(x.segment(0, 8), u.segment(0, 8), v.segment(0, 8)) +
            h.hess_quad(x.segment(8, 8), u.segment(8, 8), v.segment(8, 8));
        row += 5;
        for (int i = 1; i + 1 < m; ++i) {
            out.segment(row, 5) =
                ht.hess_quad(x.segment(8 * i, 8), u.segment(8 * i, 8), v.segment(8 * i, 8)) +
                h.hess_quad(x.segment(8 * (i + 1), 8), u.segment(8 * (i + 1), 8),
                            v.segment(8 * (i + 1), 8));
            row += 5;
        }
        return out;
    };
    return std::make_shared<EmbeddedManifold>("Sp(2," + std::to_string(m) + ")", amb, 3 * m + 4,
                                              std::move(c));
}

ManifoldPtr pullback_total(const std::string& name, const ManifoldPtr& M, const AmbientMap& f) {
    if (f.out_dim != 5) throw DomainError("pullback_total: f must land in R^5");
    const int nm = M->ambient_dim();
    const int amb = nm + 8;
    const AmbientMap h = hopf_map();
    const AmbientMap cm = M->constraints();

    AmbientMap c;
    c.in_dim = amb;
    c.out_dim = cm.out_dim + 1 + 5;
    c.value = [cm, f, h, nm](const VectorXd& x) {
        const VectorXd m = x.head(nm), p = x.tail(8);
        VectorXd out(cm.out_dim + 6);
        out.head(cm.out_dim) = cm.value(m);
        out[cm.out_dim] = p.squaredNorm() - 1.0;
        out.tail(5) = f.value(m) - h.value(p);
        return out;
    };
    c.jac = [cm, f, h, nm, amb](const VectorXd& x) {
        const VectorXd m = x.head(nm), p = x.tail(8);
        MatrixXd J = MatrixXd::Zero(cm.out_dim + 6, amb);
        J.topLeftCorner(cm.out_dim, nm) = cm.jacobian(m);
        J.row(cm.out_dim).tail(8) = 2.0 * p.transpose();
        J.block(cm.out_dim + 1, 0, 5, nm) = f.jacobian(m);
        J.block(cm.out_dim + 1, nm, 5, 8) = -h.jac(p);
        return J;
    };
    c.hess_quad = [cm, f, h, nm](const VectorXd& x, const VectorXd& u, const VectorXd& v) {
        const VectorXd m = x.head(nm), p = x.tail(8);
        VectorXd out(cm.out_dim + 6);
        out.head(cm.out_dim) = cm.hessian_quad(m, u.head(nm), v.head(nm));
        out[cm.out_dim] = 2.0 * u.tail(8).dot(v.tail(8));
        out.tail(5) = f.hessian_quad(m, u.head(nm), v.head(nm)) -
                      h.hess_quad(p, u.tail(8), v.tail(8));
        return out;
    };
    // dim = dim M + dim S^3 fiber; the 5 pullback rows carry rank 4.
    return std::make_shared<EmbeddedManifold>(name, amb, M->dim() + 3, std::move(c));
}

ManifoldPtr graph_space(const std::string& name, const ManifoldPtr& M, const AmbientMap& f) {
    const int nm = M->ambient_dim();
    const int nb = f.out_dim;
    const AmbientMap cm = M->constraints();

    AmbientMap c;
    c.in_dim = nm + nb;
    c.out_dim = cm.out_dim + nb;
    c.value = [cm, f, nm, nb](const VectorXd& x) {
        VectorXd out(cm.out_dim + nb);
        out.head(cm.out_dim) = cm.value(x.head(nm));
        out.tail(nb) = f.value(x.head(nm)) - x.tail(nb);
        return out;
    };
    c.jac = [cm, f, nm, nb](const VectorXd& x) {
        MatrixXd J = MatrixXd::Zero(cm.out_dim + nb, nm + nb);
        J.topLeftCorner(cm.out_dim, nm) = cm.jacobian(x.head(nm));
        J.block(cm.out_dim, 0, nb, nm) = f.jacobian(x.head(nm));
        J.bottomRightCorner(nb, nb) = -MatrixXd::Identity(nb, nb);
        return J;
    };
    c.hess_quad = [cm, f, nm, nb](const VectorXd& x, const VectorXd& u, const VectorXd& v) {
        VectorXd out(cm.out_dim + nb);
        out.head(cm.out_dim) = cm.hessian_quad(x.head(nm), u.head(nm), v.head(nm));
        out.tail(nb) = f.hessian_quad(x.head(nm), u.head(nm), v.head(nm));
        return out;
    };
    return std::make_shared<EmbeddedManifold>(name, nm + nb, M->dim(), std::move(c));
}

AmbientMap coordinate_pin_constraint(int ambient_dim, const std::vector<int>& coords,
                                     const std::vector<double>& values) {
    if (coords.size() != values.size())
        throw DomainError("coordinate_pin_constraint: size mismatch");
    const int k = static_cast<int>(coords.size());
    MatrixXd A = MatrixXd::Zero(k, ambient_dim);
    VectorXd b(k);
    for (int i = 0; i < k; ++i) {
        A(i, coords[i]) = 1.0;
        b[i] = values[i];
    }
    AmbientMap m = linear_map(A);
    auto base = m.value;
    m.value = [base, b](const VectorXd& x) -> VectorXd { return base(x) - b; };
    return m;
}

Submanifold great_subsphere(const ManifoldPtr& S, const std::vector<int>& zero_coords,
                            const std::string& name) {
    const std::vector<double> zeros(zero_coords.size(), 0.0);
    return make_submanifold(
        S, coordinate_pin_constraint(S->ambient_dim(), zero_coords, zeros),
        S->dim() - static_cast<int>(zero_coords.size()), name);
}

}  // namespace pullcurv::spaces
