#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pullcurv/manifold.hpp"
#include "pullcurv/smooth_map.hpp"

namespace pullcurv {

// Orthonormal horizontal/vertical frames at a point together with the
// A-tensor entries T[i][i'][j] = <A_{H_i} H_{i'}, V_j>.
struct ATensorFrame {
    VectorXd p;
    MatrixXd horizontal;           // N x dh
    MatrixXd vertical;             // N x dv
    std::vector<MatrixXd> entries;  // dv matrices of size dh x dh

    double entry(int i, int ip, int j) const { return entries[j](i, ip); }
    int horizontal_dim() const { return static_cast<int>(horizontal.cols()); }
    int vertical_dim() const { return static_cast<int>(vertical.cols()); }

    // Max antisymmetry violation over the horizontal slots.
    double antisymmetry_residual() const;
};

// Kernel of X -> A_{X^} at a point, pushed down to the base.
struct AFlatDistribution {
    VectorXd base_point;
    MatrixXd horizontal_basis;  // N x k, orthonormal, in the total space
    MatrixXd base_basis;        // amb_base x k (d pi of the horizontal basis)
    double threshold = 0.0;
    VectorXd singular_values;   // of the assembled A-operator

    int rank() const { return static_cast<int>(horizontal_basis.cols()); }
};

// A principal-bundle Riemannian submersion presented through embeddings:
// the total space carries its induced metric, the vertical space is spanned
// by the action generators, and the horizontal space is their orthogonal
// complement. For the bundles built here this is a Kaluza-Klein metric.
struct SubmersionBundle {
    std::string name;
    ManifoldPtr total;
    ManifoldPtr base;     // Riemannian model making d(pi) a horizontal isometry
    SmoothMap projection;  // total -> base
    std::vector<std::function<VectorXd(const VectorXd&)>> vertical_gen;
    MatrixXd fiber_metric;  // beta in generator coordinates

    int vertical_dim() const { return static_cast<int>(vertical_gen.size()); }
    int horizontal_dim() const { return total->dim() - vertical_dim(); }

    // Orthonormal vertical frame; throws SingularPointError when the
    // generators are dependent (non-free action point).
    MatrixXd vertical_frame(const VectorXd& p) const;
    MatrixXd horizontal_frame(const VectorXd& p) const;
    VectorXd vertical_project(const VectorXd& p, const VectorXd& v) const;
    VectorXd horizontal_project(const VectorXd& p, const VectorXd& v) const;

    // Lie-algebra coordinates of a vertical vector in the generator basis.
    VectorXd connection_form(const VectorXd& p, const VectorXd& v) const;

    // Horizontal lift of a base tangent vector.
    VectorXd horizontal_lift(const VectorXd& p, const VectorXd& X_base) const;

    // A_X Y = vertical part of the derivative of a horizontal extension of Y
    // along X (pointwise-projection extension; A is tensorial).
    VectorXd a_tensor(const VectorXd& p, const VectorXd& X, const VectorXd& Y) const;

    // Cross-check route: one half of the vertical part of the Lie bracket of
    // the two horizontal extensions.
    VectorXd a_tensor_bracket(const VectorXd& p, const VectorXd& X, const VectorXd& Y) const;

    // Curvature form of the induced connection, in Lie-algebra coordinates.
    VectorXd curvature_form(const VectorXd& p, const VectorXd& X, const VectorXd& Y) const;

    // -beta(Omega(X,Y), xi_U); agrees with <a_tensor(p,X,Y), U>.
    double a_tensor_curvature_form(const VectorXd& p, const VectorXd& X, const VectorXd& Y,
                                   const VectorXd& U) const;

    ATensorFrame a_frame(const VectorXd& p) const;

    // Operator norm of A_{X^}: Horizontal -> Vertical.
    double a_operator_norm(const VectorXd& p, const VectorXd& X) const;

    // Kernel of X -> A_{X^} by SVD with relative threshold.
    AFlatDistribution a_flat_kernel(const VectorXd& p, double rel_tol = 1e-6) const;

    // Vertizontal unnormalized curvature |A*_X U|^2 assembled from the frame.
    double vertizontal_curvature(const VectorXd& p, const VectorXd& X, const VectorXd& U) const;

    // Residual of the Riemannian-submersion property |dpi W|_base = |W| on
    // the horizontal space (max over the frame).
    double isometry_residual(const VectorXd& p) const;
};

// Histogram of dim D over sampled points.
struct RankScan {
    std::vector<int> ranks;
    std::vector<VectorXd> points;
    int min_rank = 0;
    int max_rank = 0;
};

RankScan a_flat_rank_scan(const SubmersionBundle& B, const std::vector<VectorXd>& total_points,
                          double rel_tol = 1e-6);

// Zero-curvature rigidity check on a non-negatively curved manifold:
// if K(X,U) ~ 0 then R(X,U)X must vanish and the quadratic sweep
// K(X, tU + Z) stays non-negative.
struct RigidityReport {
    double k_plane = 0.0;       // unnormalized K(X,U)
    double r_norm = 0.0;        // |R(X,U)X|
    double sweep_min = 0.0;     // min over Z, t of unnormalized K(X, tU+Z)
    double expansion_residual = 0.0;  // |direct - quadratic-expansion| max
    bool pass = false;
};

RigidityReport flat_section_rigidity_check(const EmbeddedManifold& M, const VectorXd& x,
                                           const VectorXd& X, const VectorXd& U,
                                           double flat_tol = 1e-5, double rigidity_tol = 1e-4,
                                           double sweep_tol = 1e-6);

// Graph-metric inner product g_M(X,Y) + g_B(df X, df Y).
double graph_metric_inner(const AmbientMap& f, const VectorXd& m, const VectorXd& X,
                          const VectorXd& Y);

}  // namespace pullcurv
