#include "pullcurv/numerics.hpp"

#include <cmath>
#include <limits>

#include "pullcurv/errors.hpp"

namespace pullcurv {

namespace {
const double kEps = std::numeric_limits<double>::epsilon();
}

double fd_step_jac(const VectorXd& x) {
    return std::cbrt(kEps) * (1.0 + x.lpNorm<Eigen::Infinity>());
}

double fd_step_hess(const VectorXd& x) {
    return std::pow(kEps, 0.25) * (1.0 + x.lpNorm<Eigen::Infinity>());
}

MatrixXd fd_jacobian(const std::function<VectorXd(const VectorXd&)>& f, const VectorXd& x,
                     int out_dim, double h) {
    MatrixXd J(out_dim, x.size());
    VectorXd xp = x, xm = x;
    for (int j = 0; j < x.size(); ++j) {
        xp[j] += h;
        xm[j] -= h;
        J.col(j) = (f(xp) - f(xm)) / (2.0 * h);
        xp[j] = x[j];
        xm[j] = x[j];
    }
    return J;
}

VectorXd fd_hessian_quad(const std::function<VectorXd(const VectorXd&)>& f, const VectorXd& x,
                         const VectorXd& u, const VectorXd& v, int out_dim, double h) {
    const double un = u.norm(), vn = v.norm();
    if (un == 0.0 || vn == 0.0) return VectorXd::Zero(out_dim);
    const VectorXd uh = u / un, vh = v / vn;
    const VectorXd fpp = f(x + h * uh + h * vh);
    const VectorXd fpm = f(x + h * uh - h * vh);
    const VectorXd fmp = f(x - h * uh + h * vh);
    const VectorXd fmm = f(x - h * uh - h * vh);
    return (fpp - fpm - fmp + fmm) * (un * vn / (4.0 * h * h));
}

MatrixXd AmbientMap::jacobian(const VectorXd& x) const {
    if (jac) return jac(x);
    return fd_jacobian(value, x, out_dim, fd_step_jac(x));
}

VectorXd AmbientMap::hessian_quad(const VectorXd& x, const VectorXd& u, const VectorXd& v) const {
    if (hess_quad) return hess_quad(x, u, v);
    if (jac) {
        // Difference the analytic Jacobian: u^T H v = d/dt [J(x + t v) u] at 0.
        const double vn = v.norm();
        if (vn == 0.0) return VectorXd::Zero(out_dim);
        const VectorXd vh = v / vn;
        const double h = fd_step_jac(x);
        return (jac(x + h * vh) * u - jac(x - h * vh) * u) * (vn / (2.0 * h));
    }
    return fd_hessian_quad(value, x, u, v, out_dim, fd_step_hess(x));
}

AmbientMap AmbientMap::without_analytic() const {
    AmbientMap m = *this;
    m.jac = nullptr;
    m.hess_quad = nullptr;
    return m;
}

AmbientMap compose(const AmbientMap& g, const AmbientMap& f) {
    if (f.out_dim != g.in_dim) throw DomainError("compose: dimension mismatch");
    AmbientMap m;
    m.in_dim = f.in_dim;
    m.out_dim = g.out_dim;
    m.value = [g, f](const VectorXd& x) { return g.value(f.value(x)); };
    if (f.jac && g.jac) {
        m.jac = [g, f](const VectorXd& x) -> MatrixXd { return g.jac(f.value(x)) * f.jac(x); };
    }
    return m;
}

AmbientMap direct_sum(const AmbientMap& f, const AmbientMap& g) {
    AmbientMap m;
    m.in_dim = f.in_dim + g.in_dim;
    m.out_dim = f.out_dim + g.out_dim;
    m.value = [f, g](const VectorXd& x) {
        VectorXd out(f.out_dim + g.out_dim);
        out.head(f.out_dim) = f.value(x.head(f.in_dim));
        out.tail(g.out_dim) = g.value(x.tail(g.in_dim));
        return out;
    };
    if (f.jac && g.jac) {
        m.jac = [f, g](const VectorXd& x) {
            MatrixXd J = MatrixXd::Zero(f.out_dim + g.out_dim, f.in_dim + g.in_dim);
            J.topLeftCorner(f.out_dim, f.in_dim) = f.jac(x.head(f.in_dim));
            J.bottomRightCorner(g.out_dim, g.in_dim) = g.jac(x.tail(g.in_dim));
            return J;
        };
    }
    if (f.hess_quad && g.hess_quad) {
        m.hess_quad = [f, g](const VectorXd& x, const VectorXd& u, const VectorXd& v) {
            VectorXd out(f.out_dim + g.out_dim);
            out.head(f.out_dim) =
                f.hess_quad(x.head(f.in_dim), u.head(f.in_dim), v.head(f.in_dim));
            out.tail(g.out_dim) =
                g.hess_quad(x.tail(g.in_dim), u.tail(g.in_dim), v.tail(g.in_dim));
            return out;
        };
    }
    return m;
}

AmbientMap linear_map(const MatrixXd& A) {
    AmbientMap m;
    m.in_dim = static_cast<int>(A.cols());
    m.out_dim = static_cast<int>(A.rows());
    m.value = [A](const VectorXd& x) -> VectorXd { return A * x; };
    m.jac = [A](const VectorXd&) -> MatrixXd { return A; };
    const int out = m.out_dim;
    m.hess_quad = [out](const VectorXd&, const VectorXd&, const VectorXd&) {
        return VectorXd::Zero(out);
    };
    return m;
}

AmbientMap scale_map(double c, const AmbientMap& f) {
    AmbientMap m;
    m.in_dim = f.in_dim;
    m.out_dim = f.out_dim;
    m.value = [c, f](const VectorXd& x) -> VectorXd { return c * f.value(x); };
    if (f.jac) m.jac = [c, f](const VectorXd& x) -> MatrixXd { return c * f.jac(x); };
    if (f.hess_quad)
        m.hess_quad = [c, f](const VectorXd& x, const VectorXd& u, const VectorXd& v) -> VectorXd {
            return c * f.hess_quad(x, u, v);
        };
    return m;
}

AmbientMap normalize_map(int dim) {
    AmbientMap m;
    m.in_dim = dim;
    m.out_dim = dim;
    m.value = [](const VectorXd& x) -> VectorXd { return x / x.norm(); };
    m.jac = [dim](const VectorXd& x) -> MatrixXd {
        const double n = x.norm();
        const VectorXd u = x / n;
        return (MatrixXd::Identity(dim, dim) - u * u.transpose()) / n;
    };
    return m;
}

AmbientMap slice_map(int in_dim, int offset, int len) {
    MatrixXd A = MatrixXd::Zero(len, in_dim);
    A.block(0, offset, len, len).setIdentity();
    return linear_map(A);
}

MatrixXd orthogonal_complement(const VectorXd& unit) {
    const int n = static_cast<int>(unit.size());
    Eigen::HouseholderQR<MatrixXd> qr(unit);
    const MatrixXd Q = qr.householderQ() * MatrixXd::Identity(n, n);
    return Q.rightCols(n - 1);
}

VectorXd principal_angles(const MatrixXd& A, const MatrixXd& B) {
    Eigen::JacobiSVD<MatrixXd> svd(A.transpose() * B);
    VectorXd s = svd.singularValues();
    VectorXd angles(s.size());
    for (int i = 0; i < s.size(); ++i)
        angles[i] = std::acos(std::min(1.0, std::max(-1.0, s[i])));
    // Ascending angles (singular values come out descending).
    return angles.reverse();
}

}  // namespace pullcurv
