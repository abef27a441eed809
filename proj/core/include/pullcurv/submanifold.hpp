#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pullcurv/manifold.hpp"

namespace pullcurv {

// A submanifold S of a parent manifold M, cut out by extra constraint
// equations on top of the parent's. `whole` is S viewed as an embedded
// manifold in the shared ambient space.
struct Submanifold {
    ManifoldPtr parent;
    ManifoldPtr whole;

    int dim() const { return whole->dim(); }

    // Projector onto the normal space of S inside T_x(parent).
    MatrixXd normal_in_parent_projector(const VectorXd& x) const;

    // Second fundamental form of S inside the parent manifold:
    // II_{S in M} = II_{S in ambient} - II_{M in ambient}.
    VectorXd second_fundamental_form_in_parent(const VectorXd& x, const VectorXd& u,
                                               const VectorXd& v) const;
};

Submanifold make_submanifold(ManifoldPtr parent, const AmbientMap& extra, int dim,
                             const std::string& name);

struct ClosestPointOptions {
    int max_iter = 200;
    double tol = 1e-11;
    double cluster_tol = 1e-6;  // minimizers closer than this are one minimum
};

struct ClosestPointResult {
    VectorXd point;
    double distance = 0.0;
    int converged_starts = 0;
};

// Multistart projection of x onto S; the distance is ambient (chordal).
// Throws AmbiguityError when distinct minimizers tie within cluster_tol.
ClosestPointResult closest_point(const Submanifold& S, const VectorXd& x,
                                 const std::vector<VectorXd>& starts,
                                 const ClosestPointOptions& opts = {});

// eta(z) = 0.5 * dist(z, S)^2 evaluated through closest_point.
double distance_sq_half(const Submanifold& S, const VectorXd& z,
                        const std::vector<VectorXd>& starts);

struct DistanceHessianReport {
    double deriv = 0.0;        // d eta at x along v
    double hess = 0.0;         // d^2 eta at x along (v, v)
    double expected_hess = 0.0;  // g(Pi v, Pi v), Pi = normal projector of S in M
    bool deriv_ok = false;
    bool hess_ok = false;
};

// First/second derivative of eta along the parent geodesic through x in
// direction v, checked against the projector form of the Hessian at x in S.
DistanceHessianReport distance_sq_hessian_check(const Submanifold& S, const VectorXd& x,
                                                const VectorXd& v,
                                                const std::vector<VectorXd>& starts,
                                                double deriv_tol = 1e-6,
                                                double hess_tol = 1e-4);

}  // namespace pullcurv
