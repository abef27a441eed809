#include "pullcurv/manifold.hpp"

#include <cmath>

#include "pullcurv/errors.hpp"

namespace pullcurv {

EmbeddedManifold::EmbeddedManifold(std::string name, int ambient_dim, int dim,
                                   AmbientMap constraints, ManifoldOptions opts)
    : name_(std::move(name)),
      ambient_dim_(ambient_dim),
      dim_(dim),
      constraints_(std::move(constraints)),
      opts_(opts) {
    if (constraints_.in_dim != ambient_dim_)
        throw DomainError(name_ + ": constraint domain does not match ambient dimension");
    if (dim_ <= 0 || dim_ >= ambient_dim_)
        throw DomainError(name_ + ": bad manifold dimension");
    if (constraints_.out_dim < corank())
        throw DomainError(name_ + ": fewer constraints than corank");
}

bool EmbeddedManifold::contains(const VectorXd& x, double tol) const {
    return constraints_.value(x).lpNorm<Eigen::Infinity>() < tol;
}

PointFrame EmbeddedManifold::frame(const VectorXd& x) const {
    PointFrame f;
    f.x = x;
    f.J = constraints_.jacobian(x);
    Eigen::JacobiSVD<MatrixXd> svd(f.J, Eigen::ComputeFullV | Eigen::ComputeThinU);
    const VectorXd& s = svd.singularValues();
    const int r = corank();
    const double smax = s.size() > 0 ? s[0] : 0.0;
    if (s.size() < r || s[r - 1] <= opts_.rank_tol * smax)
        throw SingularPointError(name_ + ": constraint Jacobian rank below " +
                                 std::to_string(r) + " (singular point)");
    f.sigma_min = s[r - 1];
    const MatrixXd& V = svd.matrixV();
    f.normal_basis = V.leftCols(r);
    f.tangent_basis = V.rightCols(ambient_dim_ - r);
    VectorXd sinv(r);
    for (int i = 0; i < r; ++i) sinv[i] = 1.0 / s[i];
    f.pinv_J = f.normal_basis * sinv.asDiagonal() * svd.matrixU().leftCols(r).transpose();
    return f;
}

VectorXd EmbeddedManifold::project_tangent(const VectorXd& x, const VectorXd& w) const {
    return frame(x).project_tangent(w);
}

MatrixXd EmbeddedManifold::tangent_basis(const VectorXd& x) const {
    return frame(x).tangent_basis;
}

MatrixXd EmbeddedManifold::tangent_projector(const VectorXd& x) const {
    return frame(x).tangent_projector();
}

VectorXd EmbeddedManifold::retract(const VectorXd& x0) const {
    VectorXd x = x0;
    for (int it = 0; it < opts_.retraction_max_iter; ++it) {
        const VectorXd c = constraints_.value(x);
        if (c.lpNorm<Eigen::Infinity>() < opts_.retraction_tol) return x;
        x -= frame(x).pinv_J * c;
    }
    if (constraints_.value(x).lpNorm<Eigen::Infinity>() < opts_.retraction_tol) return x;
    throw RetractionError(name_ + ": Newton projection did not converge");
}

VectorXd EmbeddedManifold::second_fundamental_form(const PointFrame& f, const VectorXd& u,
                                                   const VectorXd& v) const {
    return -(f.pinv_J * constraints_.hessian_quad(f.x, u, v));
}

VectorXd EmbeddedManifold::second_fundamental_form(const VectorXd& x, const VectorXd& u,
                                                   const VectorXd& v) const {
    return second_fundamental_form(frame(x), u, v);
}

double EmbeddedManifold::sectional_curvature(const VectorXd& x, const VectorXd& u,
                                             const VectorXd& v) const {
    const double gram = u.squaredNorm() * v.squaredNorm() - std::pow(u.dot(v), 2);
    if (gram < 1e-14)
        throw DomainError(name_ + ": sectional curvature of a degenerate plane");
    return sectional_curvature_unnormalized(x, u, v) / gram;
}

double EmbeddedManifold::sectional_curvature_unnormalized(const VectorXd& x, const VectorXd& u,
                                                          const VectorXd& v) const {
    const PointFrame f = frame(x);
    const VectorXd iiuu = second_fundamental_form(f, u, u);
    const VectorXd iivv = second_fundamental_form(f, v, v);
    const VectorXd iiuv = second_fundamental_form(f, u, v);
    return iiuu.dot(iivv) - iiuv.squaredNorm();
}

VectorXd EmbeddedManifold::curvature_apply(const VectorXd& x, const VectorXd& X,
                                           const VectorXd& Y, const VectorXd& Z) const {
    const PointFrame f = frame(x);
    const VectorXd iiYZ = second_fundamental_form(f, Y, Z);
    const VectorXd iiXZ = second_fundamental_form(f, X, Z);
    VectorXd out = VectorXd::Zero(ambient_dim_);
    // <R(X,Y)Z, W> = <II(X,W), II(Y,Z)> - <II(Y,W), II(X,Z)> over a tangent basis.
    for (int a = 0; a < f.tangent_basis.cols(); ++a) {
        const VectorXd Ea = f.tangent_basis.col(a);
        const double coeff = second_fundamental_form(f, X, Ea).dot(iiYZ) -
                             second_fundamental_form(f, Y, Ea).dot(iiXZ);
        out += coeff * Ea;
    }
    return out;
}

GeodesicState EmbeddedManifold::geodesic(
    const GeodesicState& s0, double T, double dt,
    const std::function<void(const GeodesicState&)>& observer) const {
    GeodesicState s = s0;
    if (observer) observer(s);
    const int nsteps = static_cast<int>(std::ceil(std::abs(T) / dt));
    const double step = T / nsteps;

    auto accel = [this](const VectorXd& x, const VectorXd& v) {
        return second_fundamental_form(x, v, v);
    };

    for (int i = 0; i < nsteps; ++i) {
        const VectorXd k1x = s.v;
        const VectorXd k1v = accel(s.x, s.v);
        const VectorXd k2x = s.v + 0.5 * step * k1v;
        const VectorXd k2v = accel(s.x + 0.5 * step * k1x, k2x);
        const VectorXd k3x = s.v + 0.5 * step * k2v;
        const VectorXd k3v = accel(s.x + 0.5 * step * k2x, k3x);
        const VectorXd k4x = s.v + step * k3v;
        const VectorXd k4v = accel(s.x + step * k3x, k4x);
        s.x += (step / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        s.v += (step / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        s.x = retract(s.x);
        s.v = project_tangent(s.x, s.v);
        s.t += step;
        if (observer) observer(s);
    }
    return s;
}

VectorXd EmbeddedManifold::exp(const VectorXd& x, const VectorXd& v, double dt) const {
    return geodesic({x, v, 0.0}, 1.0, dt).x;
}

AmbientMap stack_constraints(const AmbientMap& a, const AmbientMap& b) {
    if (a.in_dim != b.in_dim) throw DomainError("stack_constraints: domain mismatch");
    AmbientMap m;
    m.in_dim = a.in_dim;
    m.out_dim = a.out_dim + b.out_dim;
    m.value = [a, b](const VectorXd& x) {
        VectorXd out(a.out_dim + b.out_dim);
        out.head(a.out_dim) = a.value(x);
        out.tail(b.out_dim) = b.value(x);
        return out;
    };
    m.jac = [a, b](const VectorXd& x) {
        MatrixXd J(a.out_dim + b.out_dim, x.size());
        J.topRows(a.out_dim) = a.jacobian(x);
        J.bottomRows(b.out_dim) = b.jacobian(x);
        return J;
    };
    m.hess_quad = [a, b](const VectorXd& x, const VectorXd& u, const VectorXd& v) {
        VectorXd out(a.out_dim + b.out_dim);
        out.head(a.out_dim) = a.hessian_quad(x, u, v);
        out.tail(b.out_dim) = b.hessian_quad(x, u, v);
        return out;
    };
    return m;
}

}  // namespace pullcurv
