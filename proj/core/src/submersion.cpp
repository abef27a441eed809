#include "pullcurv/submersion.hpp"

#include <cmath>

#include "pullcurv/errors.hpp"

namespace pullcurv {

double ATensorFrame::antisymmetry_residual() const {
    double worst = 0.0;
    for (const MatrixXd& Tj : entries)
        worst = std::max(worst, (Tj + Tj.transpose()).lpNorm<Eigen::Infinity>());
    return worst;
}

MatrixXd SubmersionBundle::vertical_frame(const VectorXd& p) const {
    const int g = vertical_dim();
    MatrixXd G(p.size(), g);
    for (int a = 0; a < g; ++a) G.col(a) = vertical_gen[a](p);
    Eigen::HouseholderQR<MatrixXd> qr(G);
    const MatrixXd R = qr.matrixQR().topRows(g).triangularView<Eigen::Upper>();
    for (int a = 0; a < g; ++a)
        if (std::abs(R(a, a)) < 1e-10)
            throw SingularPointError(name + ": vertical generators dependent at point");
    return qr.householderQ() * MatrixXd::Identity(p.size(), g);
}

MatrixXd SubmersionBundle::horizontal_frame(const VectorXd& p) const {
    const MatrixXd V = vertical_frame(p);
    const MatrixXd Ph =
        total->tangent_projector(p) - V * V.transpose();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(Ph);
    const int dh = horizontal_dim();
    // Eigenvalues are ~0 or ~1; the top dh eigenvectors span the horizontal space.
    MatrixXd H(p.size(), dh);
    for (int k = 0; k < dh; ++k) {
        const int idx = static_cast<int>(p.size()) - 1 - k;
        if (es.eigenvalues()[idx] < 0.5)
            throw SingularPointError(name + ": horizontal space dimension collapsed");
        H.col(k) = es.eigenvectors().col(idx);
    }
    return H;
}

VectorXd SubmersionBundle::vertical_project(const VectorXd& p, const VectorXd& v) const {
    const MatrixXd V = vertical_frame(p);
    return V * (V.transpose() * v);
}

VectorXd SubmersionBundle::horizontal_project(const VectorXd& p, const VectorXd& v) const {
    const MatrixXd V = vertical_frame(p);
    const VectorXd tangent = total->project_tangent(p, v);
    return tangent - V * (V.transpose() * tangent);
}

VectorXd SubmersionBundle::connection_form(const VectorXd& p, const VectorXd& v) const {
    const int g = vertical_dim();
    MatrixXd G(p.size(), g);
    for (int a = 0; a < g; ++a) G.col(a) = vertical_gen[a](p);
    return G.colPivHouseholderQr().solve(v);
}

VectorXd SubmersionBundle::horizontal_lift(const VectorXd& p, const VectorXd& X_base) const {
    const MatrixXd H = horizontal_frame(p);
    const MatrixXd dpiH = projection.jacobian(p) * H;
    const VectorXd c = dpiH.colPivHouseholderQr().solve(X_base);
    return H * c;
}

VectorXd SubmersionBundle::a_tensor(const VectorXd& p, const VectorXd& X,
                                    const VectorXd& Y) const {
    const double h = fd_step_jac(p);
    const VectorXd xp = total->retract(p + h * X);
    const VectorXd xm = total->retract(p - h * X);
    const VectorXd dY = (horizontal_project(xp, Y) - horizontal_project(xm, Y)) / (2.0 * h);
    return vertical_project(p, dY);
}

VectorXd SubmersionBundle::a_tensor_bracket(const VectorXd& p, const VectorXd& X,
                                            const VectorXd& Y) const {
    const double h = fd_step_jac(p);
    const VectorXd xpX = total->retract(p + h * X);
    const VectorXd xmX = total->retract(p - h * X);
    const VectorXd xpY = total->retract(p + h * Y);
    const VectorXd xmY = total->retract(p - h * Y);
    const VectorXd dYalongX = (horizontal_project(xpX, Y) - horizontal_project(xmX, Y)) / (2.0 * h);
    const VectorXd dXalongY = (horizontal_project(xpY, X) - horizontal_project(xmY, X)) / (2.0 * h);
    return 0.5 * vertical_project(p, dYalongX - dXalongY);
}

VectorXd SubmersionBundle::curvature_form(const VectorXd& p, const VectorXd& X,
                                          const VectorXd& Y) const {
    // Omega(X,Y) = -1/2 omega([X^, Y^]) for horizontal extensions.
    const VectorXd half_bracket = a_tensor_bracket(p, X, Y);  // = 1/2 vert[X^,Y^]
    return -connection_form(p, half_bracket);
}

double SubmersionBundle::a_tensor_curvature_form(const VectorXd& p, const VectorXd& X,
                                                 const VectorXd& Y, const VectorXd& U) const {
    const VectorXd omega = curvature_form(p, X, Y);
    const VectorXd xi_u = connection_form(p, U);
    return -omega.dot(fiber_metric * xi_u);
}

ATensorFrame SubmersionBundle::a_frame(const VectorXd& p) const {
    ATensorFrame f;
    f.p = p;
    f.horizontal = horizontal_frame(p);
    f.vertical = vertical_frame(p);
    const int dh = f.horizontal_dim(), dv = f.vertical_dim();
    f.entries.assign(dv, MatrixXd::Zero(dh, dh));
    for (int i = 0; i < dh; ++i)
        for (int ip = i + 1; ip < dh; ++ip) {
            const VectorXd a = a_tensor(p, f.horizontal.col(i), f.horizontal.col(ip));
            for (int j = 0; j < dv; ++j) {
                const double val = a.dot(f.vertical.col(j));
                f.entries[j](i, ip) = val;
                f.entries[j](ip, i) = -val;
            }
        }
    return f;
}

namespace {

MatrixXd a_operator_matrix(const SubmersionBundle& B, const ATensorFrame& f, const VectorXd& X) {
    // Entries <A_X H_i', V_j>; X need not be a frame vector.
    const int dh = f.horizontal_dim(), dv = f.vertical_dim();
    MatrixXd out(dv, dh);
    for (int ip = 0; ip < dh; ++ip) {
        const VectorXd a = B.a_tensor(f.p, X, f.horizontal.col(ip));
        for (int j = 0; j < dv; ++j) out(j, ip) = a.dot(f.vertical.col(j));
    }
    return out;
}

}  // namespace

double SubmersionBundle::a_operator_norm(const VectorXd& p, const VectorXd& X) const {
    ATensorFrame f;
    f.p = p;
    f.horizontal = horizontal_frame(p);
    f.vertical = vertical_frame(p);
    const MatrixXd M = a_operator_matrix(*this, f, X);
    Eigen::JacobiSVD<MatrixXd> svd(M);
    return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
}

AFlatDistribution SubmersionBundle::a_flat_kernel(const VectorXd& p, double rel_tol) const {
    const ATensorFrame f = a_frame(p);
    const int dh = f.horizontal_dim(), dv = f.vertical_dim();
    // L maps X-coordinates (in the horizontal frame) to all entries of A_X.
    MatrixXd L(dh * dv, dh);
    for (int i = 0; i < dh; ++i)
        for (int ip = 0; ip < dh; ++ip)
            for (int j = 0; j < dv; ++j) L(ip * dv + j, i) = f.entries[j](i, ip);

    Eigen::JacobiSVD<MatrixXd> svd(L, Eigen::ComputeFullV);
    const VectorXd s = svd.singularValues();
    const double smax = s.size() ? s[0] : 0.0;
    const double thr = rel_tol * std::max(smax, 1.0);
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s[i] > thr) ++rank;

    AFlatDistribution d;
    d.threshold = thr;
    d.singular_values = s;
    const int k = dh - rank;
    d.horizontal_basis = f.horizontal * svd.matrixV().rightCols(k);
    d.base_point = projection.eval(p);
    d.base_basis = projection.jacobian(p) * d.horizontal_basis;
    // Orthonormalize the pushed-down basis.
    if (k > 0) {
        Eigen::HouseholderQR<MatrixXd> qr(d.base_basis);
        d.base_basis = qr.householderQ() * MatrixXd::Identity(d.base_basis.rows(), k);
    }
    return d;
}

double SubmersionBundle::vertizontal_curvature(const VectorXd& p, const VectorXd& X,
                                               const VectorXd& U) const {
    const MatrixXd H = horizontal_frame(p);
    double sum = 0.0;
    for (int i = 0; i < H.cols(); ++i) {
        const double c = a_tensor(p, X, H.col(i)).dot(U);
        sum += c * c;
    }
    return sum;
}

double SubmersionBundle::isometry_residual(const VectorXd& p) const {
    const MatrixXd H = horizontal_frame(p);
    const MatrixXd dpiH = projection.jacobian(p) * H;
    const MatrixXd gram = dpiH.transpose() * dpiH;
    return (gram - MatrixXd::Identity(H.cols(), H.cols())).lpNorm<Eigen::Infinity>();
}

RankScan a_flat_rank_scan(const SubmersionBundle& B, const std::vector<VectorXd>& total_points,
                          double rel_tol) {
    RankScan scan;
    scan.min_rank = B.horizontal_dim();
    scan.max_rank = 0;
    for (const VectorXd& p : total_points) {
        const AFlatDistribution d = B.a_flat_kernel(p, rel_tol);
        scan.ranks.push_back(d.rank());
        scan.points.push_back(p);
        scan.min_rank = std::min(scan.min_rank, d.rank());
        scan.max_rank = std::max(scan.max_rank, d.rank());
    }
    return scan;
}

RigidityReport flat_section_rigidity_check(const EmbeddedManifold& M, const VectorXd& x,
                                           const VectorXd& X, const VectorXd& U, double flat_tol,
                                           double rigidity_tol, double sweep_tol) {
    RigidityReport r;
    r.k_plane = M.sectional_curvature_unnormalized(x, X, U);
    const double scale = X.squaredNorm() * U.squaredNorm();
    if (std::abs(r.k_plane) > flat_tol * std::max(scale, 1.0))
        throw PreconditionError(M.name() + ": plane is not flat (K = " +
                                std::to_string(r.k_plane) + ")");

    const VectorXd RXUX = M.curvature_apply(x, X, U, X);
    r.r_norm = RXUX.norm();

    const MatrixXd T = M.tangent_basis(x);
    r.sweep_min = 0.0;
    r.expansion_residual = 0.0;
    const double tgrid[] = {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
    for (int a = 0; a < T.cols(); ++a) {
        const VectorXd Z = T.col(a);
        const double kXZ = M.sectional_curvature_unnormalized(x, X, Z);
        const double lin = RXUX.dot(Z);
        for (double t : tgrid) {
            const VectorXd W = t * U + Z;
            if (W.norm() < 1e-12) continue;
            const double direct = M.sectional_curvature_unnormalized(x, X, W);
            const double expansion = t * t * r.k_plane - 2.0 * t * lin + kXZ;
            r.sweep_min = std::min(r.sweep_min, direct);
            r.expansion_residual =
                std::max(r.expansion_residual, std::abs(direct - expansion));
        }
    }
    r.pass = r.r_norm < rigidity_tol && r.sweep_min > -sweep_tol;
    return r;
}

double graph_metric_inner(const AmbientMap& f, const VectorXd& m, const VectorXd& X,
                          const VectorXd& Y) {
    const MatrixXd J = f.jacobian(m);
    return X.dot(Y) + (J * X).dot(J * Y);
}

}  // namespace pullcurv
