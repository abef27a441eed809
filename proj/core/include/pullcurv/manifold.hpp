#pragma once

#include <functional>
#include <memory>
#include <string>

#include <Eigen/Dense>

#include "pullcurv/numerics.hpp"

namespace pullcurv {

struct ManifoldOptions {
    double rank_tol = 1e-8;        // relative singular-value floor for the declared corank
    double retraction_tol = 1e-12;
    int retraction_max_iter = 20;
    double on_manifold_tol = 1e-9;
};

// Orthogonal decomposition of the ambient space at a point: normal space =
// row space of the constraint Jacobian, tangent space = its complement.
// Constraint systems may carry redundant rows (pullback equalities between
// points of a sphere), so the rank is fixed by the declared manifold
// dimension rather than the row count.
struct PointFrame {
    VectorXd x;
    MatrixXd J;              // m x N constraint Jacobian
    MatrixXd normal_basis;   // N x r, orthonormal
    MatrixXd tangent_basis;  // N x dim, orthonormal
    double sigma_min = 0.0;  // smallest kept singular value
    MatrixXd pinv_J;         // N x m Moore-Penrose inverse at rank r

    MatrixXd tangent_projector() const {
        return MatrixXd::Identity(x.size(), x.size()) - normal_basis * normal_basis.transpose();
    }
    VectorXd project_tangent(const VectorXd& w) const {
        return w - normal_basis * (normal_basis.transpose() * w);
    }
};

struct GeodesicState {
    VectorXd x;
    VectorXd v;
    double t = 0.0;
};

// A submanifold of Euclidean space cut out by constraint equations, carrying
// the induced metric. All geometry (second fundamental form, curvature,
// geodesics) is derived from the constraints and their derivatives.
class EmbeddedManifold {
public:
    EmbeddedManifold(std::string name, int ambient_dim, int dim, AmbientMap constraints,
                     ManifoldOptions opts = {});

    const std::string& name() const { return name_; }
    int ambient_dim() const { return ambient_dim_; }
    int dim() const { return dim_; }
    int corank() const { return ambient_dim_ - dim_; }
    const AmbientMap& constraints() const { return constraints_; }
    const ManifoldOptions& options() const { return opts_; }

    VectorXd constraint_residual(const VectorXd& x) const { return constraints_.value(x); }
    bool contains(const VectorXd& x, double tol) const;

    // Throws SingularPointError if the Jacobian rank drops below the corank.
    PointFrame frame(const VectorXd& x) const;

    VectorXd project_tangent(const VectorXd& x, const VectorXd& w) const;
    MatrixXd tangent_basis(const VectorXd& x) const;
    MatrixXd tangent_projector(const VectorXd& x) const;

    // Newton projection onto the constraint set (throws RetractionError).
    VectorXd retract(const VectorXd& x0) const;

    // Normal-valued second fundamental form II(u, v) = -J^+ (u^T Hess(c) v).
    VectorXd second_fundamental_form(const VectorXd& x, const VectorXd& u,
                                     const VectorXd& v) const;
    VectorXd second_fundamental_form(const PointFrame& f, const VectorXd& u,
                                     const VectorXd& v) const;

    // Normalized sectional curvature via the Gauss equation (flat ambient).
    double sectional_curvature(const VectorXd& x, const VectorXd& u, const VectorXd& v) const;

    // Unnormalized: <R(u,v)v, u>.
    double sectional_curvature_unnormalized(const VectorXd& x, const VectorXd& u,
                                            const VectorXd& v) const;

    // R(X,Y)Z as a tangent vector, from the Gauss equation.
    VectorXd curvature_apply(const VectorXd& x, const VectorXd& X, const VectorXd& Y,
                             const VectorXd& Z) const;

    // Integrate the geodesic equation xdd = II(xd, xd) by RK4 with per-step
    // retraction and tangent re-projection of the velocity.
    GeodesicState geodesic(const GeodesicState& s0, double T, double dt = 1e-3,
                           const std::function<void(const GeodesicState&)>& observer = {}) const;

    VectorXd exp(const VectorXd& x, const VectorXd& v, double dt = 1e-3) const;

private:
    std::string name_;
    int ambient_dim_;
    int dim_;
    AmbientMap constraints_;
    ManifoldOptions opts_;
};

using ManifoldPtr = std::shared_ptr<const EmbeddedManifold>;

// Stack two constraint systems over the same ambient space.
AmbientMap stack_constraints(const AmbientMap& a, const AmbientMap& b);

}  // namespace pullcurv
