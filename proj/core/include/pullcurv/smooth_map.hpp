#pragma once

#include <memory>

#include "pullcurv/manifold.hpp"
#include "pullcurv/numerics.hpp"

namespace pullcurv {

// A map between embedded manifolds, represented by an ambient extension.
struct SmoothMap {
    ManifoldPtr domain;
    ManifoldPtr codomain;
    AmbientMap map;

    VectorXd eval(const VectorXd& x) const { return map.value(x); }
    MatrixXd jacobian(const VectorXd& x) const { return map.jacobian(x); }

    // Differential restricted to the domain tangent space and projected onto
    // the codomain tangent space, in ambient coordinates (amb_cod x dim_dom).
    MatrixXd differential(const VectorXd& x) const {
        const MatrixXd T = domain->tangent_basis(x);
        const MatrixXd J = map.jacobian(x) * T;
        return codomain->tangent_projector(map.value(x)) * J;
    }

    VectorXd push(const VectorXd& x, const VectorXd& v) const {
        return codomain->project_tangent(map.value(x), map.jacobian(x) * v);
    }

    // Singular values of the restricted differential.
    VectorXd singular_values(const VectorXd& x) const {
        Eigen::JacobiSVD<MatrixXd> svd(differential(x));
        return svd.singularValues();
    }

    int rank(const VectorXd& x, double rel_tol = 1e-8) const {
        const VectorXd s = singular_values(x);
        if (s.size() == 0 || s[0] == 0.0) return 0;
        int r = 0;
        for (int i = 0; i < s.size(); ++i)
            if (s[i] > rel_tol * s[0]) ++r;
        return r;
    }
};

}  // namespace pullcurv
