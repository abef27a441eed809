#include "pullcurv/submanifold.hpp"

#include <algorithm>
#include <cmath>

#include "pullcurv/errors.hpp"

namespace pullcurv {

MatrixXd Submanifold::normal_in_parent_projector(const VectorXd& x) const {
    const MatrixXd Pm = parent->tangent_projector(x);
    const MatrixXd Ps = whole->tangent_projector(x);
    return Pm - Ps;  // tangent to M, normal to S
}

VectorXd Submanifold::second_fundamental_form_in_parent(const VectorXd& x, const VectorXd& u,
                                                        const VectorXd& v) const {
    return whole->second_fundamental_form(x, u, v) - parent->second_fundamental_form(x, u, v);
}

Submanifold make_submanifold(ManifoldPtr parent, const AmbientMap& extra, int dim,
                             const std::string& name) {
    Submanifold s;
    s.parent = parent;
    s.whole = std::make_shared<EmbeddedManifold>(
        name, parent->ambient_dim(), dim, stack_constraints(parent->constraints(), extra),
        parent->options());
    return s;
}

namespace {

// Projected-point refinement: alternate a tangential move toward x with the
// Newton retraction. Linear rate ~ distance * curvature, which is plenty
// inside the tubes this is used on.
bool refine_closest(const EmbeddedManifold& S, const VectorXd& x, VectorXd& s,
                    const ClosestPointOptions& opts) {
    for (int it = 0; it < opts.max_iter; ++it) {
        const VectorXd step = S.frame(s).project_tangent(x - s);
        if (step.norm() < opts.tol * (1.0 + x.norm())) return true;
        s = S.retract(s + step);
    }
    return false;
}

}  // namespace

ClosestPointResult closest_point(const Submanifold& S, const VectorXd& x,
                                 const std::vector<VectorXd>& starts,
                                 const ClosestPointOptions& opts) {
    if (starts.empty()) throw DomainError("closest_point: no starting points");

    std::vector<VectorXd> minima;
    std::vector<double> dists;
    int converged = 0;
    for (const VectorXd& s0 : starts) {
        VectorXd s = S.whole->retract(s0);
        if (!refine_closest(*S.whole, x, s, opts)) continue;
        ++converged;
        bool duplicate = false;
        for (const VectorXd& m : minima)
            if ((m - s).norm() < opts.cluster_tol) {
                duplicate = true;
                break;
            }
        if (!duplicate) {
            minima.push_back(s);
            dists.push_back((x - s).norm());
        }
    }
    if (minima.empty()) throw RetractionError("closest_point: no start converged");

    int best = 0;
    for (std::size_t i = 1; i < dists.size(); ++i)
        if (dists[i] < dists[best]) best = static_cast<int>(i);
    for (std::size_t i = 0; i < dists.size(); ++i) {
        if (static_cast<int>(i) == best) continue;
        if (dists[i] - dists[best] < opts.cluster_tol)
            throw AmbiguityError(
                "closest_point: distinct minimizers at equal distance (outside tube)");
    }
    return {minima[best], dists[best], converged};
}

double distance_sq_half(const Submanifold& S, const VectorXd& z,
                        const std::vector<VectorXd>& starts) {
    const double d = closest_point(S, z, starts).distance;
    return 0.5 * d * d;
}

DistanceHessianReport distance_sq_hessian_check(const Submanifold& S, const VectorXd& x,
                                                const VectorXd& v,
                                                const std::vector<VectorXd>& starts,
                                                double deriv_tol, double hess_tol) {
    const double h = 1e-3;
    const EmbeddedManifold& M = *S.parent;
    const VectorXd vt = M.project_tangent(x, v);

    const VectorXd xp = M.exp(x, h * vt);
    const VectorXd xm = M.exp(x, -h * vt);
    const double ep = distance_sq_half(S, xp, starts);
    const double em = distance_sq_half(S, xm, starts);
    const double e0 = distance_sq_half(S, x, starts);

    DistanceHessianReport r;
    r.deriv = (ep - em) / (2.0 * h);
    r.hess = (ep - 2.0 * e0 + em) / (h * h);
    const VectorXd pv = S.normal_in_parent_projector(x) * vt;
    r.expected_hess = pv.squaredNorm();
    r.deriv_ok = std::abs(r.deriv) < deriv_tol * (1.0 + vt.norm());
    r.hess_ok = std::abs(r.hess - r.expected_hess) < hess_tol * (1.0 + vt.squaredNorm());
    return r;
}

}  // namespace pullcurv
