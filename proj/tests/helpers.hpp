#pragma once

#include "pullcurv/manifold.hpp"
#include "pullcurv/quatmat.hpp"
#include "pullcurv/rng.hpp"

namespace pullcurv::testing {

using pullcurv::QuatMat2;
using pullcurv::qm_exp;

inline QuatMat2 commutator(const QuatMat2& x, const QuatMat2& y) { return qm_commutator(x, y); }
inline QuatMat2 quatmat_exp(const QuatMat2& v) { return qm_exp(v); }
inline QuatMat2 random_sp2_algebra(Rng& rng) { return pullcurv::random_sp2_algebra(rng); }

inline VectorXd random_tangent(const EmbeddedManifold& M, const VectorXd& x, Rng& rng) {
    VectorXd v = M.project_tangent(x, rng.gaussian_vector(M.ambient_dim()));
    return v / v.norm();
}

}  // namespace pullcurv::testing
