#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

namespace pullcurv {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Default finite-difference steps: eps^(1/3) for first derivatives,
// eps^(1/4) for second; both scaled by (1 + |x|_inf).
double fd_step_jac(const VectorXd& x);
double fd_step_hess(const VectorXd& x);

// A smooth map between ambient Euclidean spaces with optional analytic
// derivatives. Missing derivatives fall back to central finite differences;
// when only the Jacobian is analytic, the Hessian form is differenced from it.
struct AmbientMap {
    int in_dim = 0;
    int out_dim = 0;
    std::function<VectorXd(const VectorXd&)> value;
    std::function<MatrixXd(const VectorXd&)> jac;  // optional
    // (x, u, v) -> vector with components u^T Hess(f_i)(x) v; optional
    std::function<VectorXd(const VectorXd&, const VectorXd&, const VectorXd&)> hess_quad;

    VectorXd operator()(const VectorXd& x) const { return value(x); }

    MatrixXd jacobian(const VectorXd& x) const;
    VectorXd hessian_quad(const VectorXd& x, const VectorXd& u, const VectorXd& v) const;

    bool has_analytic_jac() const { return static_cast<bool>(jac); }

    // Copy of this map with analytic derivatives stripped (pure FD); used to
    // exercise the finite-difference paths at their looser tolerances.
    AmbientMap without_analytic() const;
};

MatrixXd fd_jacobian(const std::function<VectorXd(const VectorXd&)>& f, const VectorXd& x,
                     int out_dim, double h);

// u^T Hess(f_i) v by the symmetric 4-point rule.
VectorXd fd_hessian_quad(const std::function<VectorXd(const VectorXd&)>& f, const VectorXd& x,
                         const VectorXd& u, const VectorXd& v, int out_dim, double h);

// Composition g(f(x)) with chain-rule Jacobian when both factors have one.
AmbientMap compose(const AmbientMap& g, const AmbientMap& f);

// Stack two maps on a split domain: x = [x1; x2] -> [f(x1); g(x2)].
AmbientMap direct_sum(const AmbientMap& f, const AmbientMap& g);

AmbientMap linear_map(const MatrixXd& A);

// c * f, keeping whatever analytic derivatives f has.
AmbientMap scale_map(double c, const AmbientMap& f);

// f(x) = x / |x| with analytic derivatives.
AmbientMap normalize_map(int dim);

// Coordinate slice x -> x[offset : offset+len].
AmbientMap slice_map(int in_dim, int offset, int len);

// Orthonormal basis of the orthogonal complement of a unit vector.
MatrixXd orthogonal_complement(const VectorXd& unit);

// Principal angles (radians, ascending) between the column spans of two
// orthonormal-basis matrices.
VectorXd principal_angles(const MatrixXd& A, const MatrixXd& B);

}  // namespace pullcurv
