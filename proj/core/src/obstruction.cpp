#include "pullcurv/obstruction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pullcurv/embedding.hpp"
#include "pullcurv/errors.hpp"
#include "pullcurv/spaces.hpp"

namespace pullcurv::obs {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "indeterminate";
    }
}

namespace {

Verdict classify(double measure, const VerdictThresholds& thr) {
    if (measure < thr.pass_tol) return Verdict::pass;
    if (measure > thr.fail_floor) return Verdict::fail;
    return Verdict::indeterminate;
}

// Random unit vector in the span of the columns of T.
VectorXd random_in_span(const MatrixXd& T, Rng& rng) {
    const VectorXd c = rng.gaussian_vector(static_cast<int>(T.cols()));
    VectorXd v = T * c;
    return v / v.norm();
}

}  // namespace

GeodesyVerdict totally_geodesic_submanifold_test(const Submanifold& S,
                                                 const std::vector<VectorXd>& points,
                                                 const AmbientMap& F, const VectorXd& b,
                                                 Rng& rng, const TotallyGeodesicOptions& opts,
                                                 const std::string& fiber_id) {
    GeodesyVerdict gv;
    gv.fiber_id = fiber_id;
    gv.thresholds = opts.thresholds;
    gv.pairs_per_point = opts.pairs_per_point;

    if (points.empty()) {
        gv.note = "no sample points";
        return gv;
    }

    // Measure 1: pointwise second fundamental form on random unit pairs.
    const int n_ii = std::min<int>(opts.max_points, static_cast<int>(points.size()));
    const int stride = std::max<std::size_t>(1, points.size() / n_ii);
    for (std::size_t idx = 0; idx < points.size(); idx += stride) {
        const VectorXd& x = points[idx];
        MatrixXd T;
        try {
            T = S.whole->tangent_basis(x);
        } catch (const SingularPointError&) {
            gv.note = "singular fiber point";
            gv.verdict = Verdict::indeterminate;
            continue;
        }
        ++gv.points_used;
        for (int k = 0; k < opts.pairs_per_point; ++k) {
            const VectorXd u = random_in_span(T, rng);
            const VectorXd v = random_in_span(T, rng);
            gv.max_ii = std::max(gv.max_ii,
                                 S.second_fundamental_form_in_parent(x, u, v).norm());
        }
    }

    // Measure 2: shoot parent geodesics with fiber-tangent velocity and track
    // the drift of the level values, rescaled to |II| units through the
    // normal response of F.
    const int n_g = std::min<int>(opts.geodesic_starts, static_cast<int>(points.size()));
    for (int k = 0; k < n_g; ++k) {
        const VectorXd& x = points[k * points.size() / n_g];
        MatrixXd T;
        try {
            T = S.whole->tangent_basis(x);
        } catch (const SingularPointError&) {
            continue;
        }
        const VectorXd v = random_in_span(T, rng);

        const MatrixXd N = S.normal_in_parent_projector(x);
        Eigen::JacobiSVD<MatrixXd> nsvd(N, Eigen::ComputeThinU);
        int ndim = 0;
        for (int i = 0; i < nsvd.singularValues().size(); ++i)
            if (nsvd.singularValues()[i] > 0.5) ++ndim;
        const MatrixXd Nbasis = nsvd.matrixU().leftCols(ndim);
        Eigen::JacobiSVD<MatrixXd> dsvd(F.jacobian(x) * Nbasis);
        const double s_min = dsvd.singularValues()[ndim > 0 ? ndim - 1 : 0];

        double drift = 0.0;
        S.parent->geodesic({x, v, 0.0}, opts.geodesic_T, opts.geodesic_dt,
                           [&](const GeodesicState& st) {
                               drift = std::max(drift, (F.value(st.x) - b).norm());
                           });
        gv.max_drift_raw = std::max(gv.max_drift_raw, drift);
        if (s_min > 1e-12)
            gv.drift_scaled = std::max(
                gv.drift_scaled, 2.0 * drift / (opts.geodesic_T * opts.geodesic_T * s_min));
    }

    gv.verdict_ii = classify(gv.max_ii, opts.thresholds);
    gv.verdict_drift = classify(gv.drift_scaled, opts.thresholds);
    gv.measures_agree = gv.verdict_ii == gv.verdict_drift;
    if (gv.verdict_ii == Verdict::pass && gv.verdict_drift == Verdict::pass)
        gv.verdict = Verdict::pass;
    else if (gv.verdict_ii == Verdict::fail || gv.verdict_drift == Verdict::fail)
        gv.verdict = Verdict::fail;
    else
        gv.verdict = Verdict::indeterminate;
    return gv;
}

GeodesyVerdict totally_geodesic_test(const zoo::ZooMap& map, const VectorXd& b,
                                     const zoo::FiberSample& fiber, Rng& rng,
                                     const TotallyGeodesicOptions& opts) {
    const Submanifold S = zoo::fiber_submanifold(map, b);
    GeodesyVerdict gv = totally_geodesic_submanifold_test(
        S, fiber.points, map.map.map, b, rng,
        opts, map.name + (map.param ? "-" + std::to_string(map.param) : ""));
    if (fiber.singular_flag) {
        gv.verdict = Verdict::indeterminate;
        gv.note = "fiber carries singular points";
    }
    return gv;
}

GeodesyVerdict totally_geodesic_graph_test(const ManifoldPtr& M, const AmbientMap& f_unit,
                                           const AmbientMap& extra_on_M, int fiber_dim,
                                           const std::vector<VectorXd>& points_in_M, Rng& rng,
                                           const TotallyGeodesicOptions& opts,
                                           const std::string& fiber_id) {
    const AmbientMap fh = scale_map(0.5, f_unit);
    const ManifoldPtr G = spaces::graph_space(fiber_id + "-graph", M, fh);
    const int nm = M->ambient_dim();

    // Lift the fiber constraints to the graph ambient (they act on the
    // m-block only).
    AmbientMap lifted;
    lifted.in_dim = G->ambient_dim();
    lifted.out_dim = extra_on_M.out_dim;
    lifted.value = [extra_on_M, nm](const VectorXd& x) { return extra_on_M.value(x.head(nm)); };
    lifted.jac = [extra_on_M, nm](const VectorXd& x) {
        MatrixXd J = MatrixXd::Zero(extra_on_M.out_dim, x.size());
        J.leftCols(nm) = extra_on_M.jacobian(x.head(nm));
        return J;
    };
    lifted.hess_quad = [extra_on_M, nm](const VectorXd& x, const VectorXd& u, const VectorXd& v) {
        return extra_on_M.hessian_quad(x.head(nm), u.head(nm), v.head(nm));
    };
    const Submanifold S = make_submanifold(G, lifted, fiber_dim, fiber_id);

    std::vector<VectorXd> lifted_pts;
    for (const VectorXd& m : points_in_M) {
        VectorXd x(G->ambient_dim());
        x.head(nm) = m;
        x.tail(G->ambient_dim() - nm) = fh.value(m);
        lifted_pts.push_back(x);
    }
    return totally_geodesic_submanifold_test(S, lifted_pts, lifted,
                                             VectorXd::Zero(lifted.out_dim), rng, opts,
                                             fiber_id);
}

// ----- degeneration trace -----

double degeneration_eta(int n, double t) {
    const double st = std::sin(t);
    if (std::abs(st) < 1e-9) return 2.0 * n * n;
    const double s = std::sin(n * t);
    return 2.0 * s * s / (st * st);
}

double degeneration_eta_min_interior(int n) {
    double a = 0.0, b = M_PI / (2.0 * n);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = degeneration_eta(n, x1), f2 = degeneration_eta(n, x2);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = degeneration_eta(n, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = degeneration_eta(n, x2);
        }
    }
    // Include the endpoints; the minimum sits at pi/(2n) for n >= 2.
    return std::min({degeneration_eta(n, 0.0), degeneration_eta(n, M_PI / (2.0 * n)),
                     degeneration_eta(n, 0.5 * (a + b))});
}

DegenerationTrace degeneration_trace(int n, double theta_start, double theta_end, int steps,
                                     int fiber_count, Rng& rng) {
    if (n < 1) throw DomainError("degeneration_trace: n >= 1 required");
    if (steps < 2 || theta_end <= theta_start || theta_end >= M_PI)
        throw DomainError("degeneration_trace: bad theta grid");
    const zoo::ZooMap map = zoo::zoo_cayley(n);

    DegenerationTrace tr;
    tr.n = n;
    tr.eta_min_interior = degeneration_eta_min_interior(n);
    tr.bound_ok = true;
    tr.interior_bound_ok = true;
    tr.interior_monotone_ok = true;

    std::vector<VectorXd> carry;  // continuation starts from the previous fiber
    double prev_interior = std::numeric_limits<double>::infinity();
    for (int i = 0; i < steps; ++i) {
        const double theta = theta_start + (theta_end - theta_start) * i / (steps - 1);
        VectorXd b(5);
        b << std::cos(theta), std::sin(theta), 0.0, 0.0, 0.0;
        // Bias part of the multistart toward the meridian {(a, 0)} so the
        // interior collar of the cap is well covered.
        std::vector<VectorXd> starts = carry;
        for (int k = 0; k < fiber_count / 2; ++k) {
            VectorXd s(8);
            s.head(4) = rng.unit_vector(4);
            s.tail(4) = rng.uniform(0.01, 0.3) * rng.unit_vector(4);
            s /= s.norm();
            starts.push_back(s);
        }
        const zoo::FiberSample fs = zoo::fiber_sample(map, b, fiber_count, rng, {}, starts);

        DegenerationRow row;
        row.theta = theta;
        row.cos_theta = std::cos(theta);
        row.eta_min_observed = std::numeric_limits<double>::infinity();

        std::vector<VectorXd> cap;
        for (const VectorXd& q : fs.points) {
            const double t = zoo::s7_angle(q);
            if (t < 0.0 || t > M_PI / n) continue;  // north polar cap only
            cap.push_back(q);
            const double babs = q.tail(4).norm();
            const double eta = degeneration_eta(n, t);
            row.eta_min_observed = std::min(row.eta_min_observed, eta);
            row.max_abs_b = std::max(row.max_abs_b, babs);
            row.identity_residual = std::max(
                row.identity_residual, std::abs(eta * babs * babs - (1.0 + row.cos_theta)));
            if (t <= M_PI / (2.0 * n)) {
                ++row.interior_points;
                row.interior_max_b_sq = std::max(row.interior_max_b_sq, babs * babs);
            }
            row.t_min = row.cap_points == 0 ? t : std::min(row.t_min, t);
            row.t_max = std::max(row.t_max, t);
            double dist_sing = babs;  // chordal distance to the {(a,0)} stratum
            for (int k = 0; k <= n; ++k)
                dist_sing = std::min(dist_sing, std::abs(t - k * M_PI / n));
            row.min_dist_singular =
                row.cap_points == 0 ? dist_sing : std::min(row.min_dist_singular, dist_sing);
            ++row.cap_points;
        }
        if (cap.empty())
            throw EmptyFiberError("degeneration_trace: empty north-cap component at theta = " +
                                  std::to_string(theta));
        for (std::size_t a = 0; a < cap.size(); ++a)
            for (std::size_t c = a + 1; c < cap.size(); ++c)
                row.diameter = std::max(row.diameter, (cap[a] - cap[c]).norm());

        row.max_b_sq = row.max_abs_b * row.max_abs_b;
        row.bound = (1.0 + row.cos_theta) / row.eta_min_observed;
        row.interior_bound = (1.0 + row.cos_theta) / tr.eta_min_interior;
        if (row.max_b_sq > row.bound + 1e-6) tr.bound_ok = false;
        if (row.interior_points > 0 && row.interior_max_b_sq > row.interior_bound + 1e-6)
            tr.interior_bound_ok = false;
        if (row.interior_max_b_sq > prev_interior + 1e-6) tr.interior_monotone_ok = false;
        prev_interior = row.interior_max_b_sq;
        tr.rows.push_back(row);

        carry = fs.points;  // seed the next (nearby) fiber
    }
    tr.final_max_b_sq = tr.rows.back().max_b_sq;
    tr.final_interior_max_b_sq = tr.rows.back().interior_max_b_sq;
    return tr;
}

std::string degeneration_trace_csv(const DegenerationTrace& t) {
    std::ostringstream os;
    os.precision(17);
    os << "theta,cos_theta,cap_points,max_abs_b,max_b_sq,bound,eta_min,identity_residual,"
          "interior_points,interior_max_b_sq,interior_bound,t_min,t_max,diameter,"
          "min_dist_singular\n";
    for (const DegenerationRow& r : t.rows) {
        os << r.theta << ',' << r.cos_theta << ',' << r.cap_points << ',' << r.max_abs_b << ','
           << r.max_b_sq << ',' << r.bound << ',' << r.eta_min_observed << ','
           << r.identity_residual << ',' << r.interior_points << ',' << r.interior_max_b_sq
           << ',' << r.interior_bound << ',' << r.t_min << ',' << r.t_max << ',' << r.diameter
           << ',' << r.min_dist_singular << "\n";
    }
    return os.str();
}

// ----- radial projection -----

ImmersionReport radial_projection_immersion_test(const Submanifold& S,
                                                 const std::vector<VectorXd>& fiber_points,
                                                 const std::vector<MatrixXd>& fiber_frames,
                                                 const std::vector<VectorXd>& S_starts,
                                                 double imm_tol) {
    ImmersionReport rep;
    rep.dim_target = S.dim();
    rep.dim_fiber = fiber_points.empty() || fiber_frames.empty()
                        ? 0
                        : static_cast<int>(fiber_frames[0].cols());
    rep.min_singular = std::numeric_limits<double>::infinity();
    if (rep.dim_fiber > rep.dim_target) {
        rep.structural_obstruction = true;
        rep.note = "fiber dimension exceeds target dimension; no immersion can exist";
    }

    const double h = 1e-5;
    for (std::size_t i = 0; i < fiber_points.size(); ++i) {
        const VectorXd& x = fiber_points[i];
        const MatrixXd& T = fiber_frames[i];
        if (T.cols() == 0) continue;
        const ClosestPointResult c0 = closest_point(S, x, S_starts);
        rep.max_tube_distance = std::max(rep.max_tube_distance, c0.distance);
        const std::vector<VectorXd> warm = {c0.point};
        MatrixXd Dp(x.size(), T.cols());
        for (int j = 0; j < T.cols(); ++j) {
            const VectorXd xp = S.parent->retract(x + h * T.col(j));
            const VectorXd xm = S.parent->retract(x - h * T.col(j));
            Dp.col(j) =
                (closest_point(S, xp, warm).point - closest_point(S, xm, warm).point) /
                (2.0 * h);
        }
        Eigen::JacobiSVD<MatrixXd> svd(Dp);
        const VectorXd s = svd.singularValues();
        rep.min_singular = std::min(rep.min_singular, s[s.size() - 1]);
        int rank = 0;
        for (int j = 0; j < s.size(); ++j)
            if (s[j] > imm_tol) ++rank;
        rep.rank_profile.push_back(rank);
    }
    rep.immersion = !rep.structural_obstruction && !fiber_points.empty() &&
                    rep.min_singular > imm_tol;
    return rep;
}

// ----- stability probe -----

StabilityProbe stability_bound_probe(const Submanifold& S, const std::vector<VectorXd>& S_points,
                                     double delta, int geodesic_count, Rng& rng,
                                     double hessian_tol) {
    if (delta * delta >= 0.2)
        throw PreconditionError("stability_bound_probe: requires delta^2 < 1/5");
    StabilityProbe probe;
    probe.delta = delta;
    probe.fitted_c_min = std::numeric_limits<double>::infinity();
    probe.hessian_margin = std::numeric_limits<double>::infinity();
    const EmbeddedManifold& M = *S.parent;

    auto eta = [&](const VectorXd& z) { return distance_sq_half(S, z, S_points); };

    // Differential of the projection, for the fiber-tangent kernel.
    auto fiber_tangent = [&](const VectorXd& x) -> MatrixXd {
        const ClosestPointResult c0 = closest_point(S, x, S_points);
        const std::vector<VectorXd> warm = {c0.point};
        const MatrixXd T = M.tangent_basis(x);
        const double h = 1e-5;
        MatrixXd Dp(x.size(), T.cols());
        for (int j = 0; j < T.cols(); ++j) {
            const VectorXd xp = M.retract(x + h * T.col(j));
            const VectorXd xm = M.retract(x - h * T.col(j));
            Dp.col(j) =
                (closest_point(S, xp, warm).point - closest_point(S, xm, warm).point) /
                (2.0 * h);
        }
        Eigen::JacobiSVD<MatrixXd> svd(Dp, Eigen::ComputeFullV);
        const VectorXd s = svd.singularValues();
        int rank = 0;
        for (int i = 0; i < s.size(); ++i)
            if (s[i] > 1e-3) ++rank;
        return T * svd.matrixV().rightCols(T.cols() - rank);
    };

    for (int g = 0; g < geodesic_count; ++g) {
        // Near-S start point: exponential of a normal vector of length < delta.
        const VectorXd s0 = S_points[g % S_points.size()];
        const MatrixXd Npro = S.normal_in_parent_projector(s0);
        VectorXd nu = Npro * rng.gaussian_vector(static_cast<int>(s0.size()));
        nu /= nu.norm();
        const double r = delta * rng.uniform(0.05, 0.95);
        const VectorXd x = M.exp(s0, r * nu);

        const MatrixXd K = fiber_tangent(x);
        if (K.cols() == 0) continue;
        VectorXd v = random_in_span(K, rng);
        // Orient so that h'(0) >= 0.
        {
            const double h = 1e-4;
            if (eta(M.exp(x, h * v)) < eta(M.exp(x, -h * v))) v = -v;
        }

        ++probe.geodesics;
        std::vector<double> ts, hs;
        M.geodesic({x, v, 0.0}, 1.0, 2e-3, [&](const GeodesicState& st) {
            if (st.t < 0.05) return;
            const double val = eta(st.x);
            if (std::sqrt(2.0 * val) > 2.0 * delta) return;  // left U_{2delta}
            ts.push_back(st.t);
            hs.push_back(val);
        });
        for (std::size_t i = 0; i < ts.size(); ++i)
            probe.fitted_c_min = std::min(probe.fitted_c_min, hs[i] / (ts[i] * ts[i]));

        // Hessian inequality at the start point.
        const MatrixXd Pi = K * K.transpose();
        const VectorXd w = random_in_span(M.tangent_basis(x), rng);
        const double h = 3e-3;
        const double d2 =
            (eta(M.exp(x, h * w)) - 2.0 * eta(x) + eta(M.exp(x, -h * w))) / (h * h);
        const VectorXd pw = Pi * w;
        const VectorXd qw = w - pw;
        const double rhs = 0.9 * pw.squaredNorm() - 0.1 * qw.squaredNorm();
        probe.hessian_margin = std::min(probe.hessian_margin, d2 - rhs);
    }

    // Pure-normal sanity: h(t) = t^2/2 + O(t^3) for v normal at x in S.
    {
        const VectorXd s0 = S_points[0];
        const MatrixXd Npro = S.normal_in_parent_projector(s0);
        VectorXd nu = Npro * rng.gaussian_vector(static_cast<int>(s0.size()));
        nu /= nu.norm();
        const double t = 1e-2;
        const double hval = eta(M.exp(s0, t * nu));
        probe.pure_normal_h_residual = std::abs(hval - 0.5 * t * t) / (t * t);
    }

    probe.c_ok = probe.fitted_c_min >= 0.2 - 1e-9;
    probe.hessian_ok = probe.hessian_margin > -hessian_tol;
    return probe;
}

// ----- A-flat pipeline -----

namespace {

// Projector field onto ker df; smooth where the rank is constant.
MatrixXd kernel_projector(const zoo::PullbackBundle& pb, const VectorXd& m) {
    const MatrixXd K = pb.ker_df(m);
    return K * K.transpose();
}

}  // namespace

AFlatFieldReport a_flat_field_checks(const zoo::PullbackBundle& pb, const VectorXd& m0,
                                     Rng& rng, double tol) {
    AFlatFieldReport rep;

    // Numeric A-flat kernel upstairs vs ker df downstairs.
    const VectorXd p0 = pb.lift_point(m0, rng.unit_quaternion());
    const AFlatDistribution D = pb.bundle.a_flat_kernel(p0);
    rep.kernel_rank = D.rank();
    const MatrixXd Kdf = pb.ker_df(m0);
    if (D.rank() == Kdf.cols() && D.rank() > 0) {
        // Push the kernel down: base_basis lives in the graph model, first
        // block = the domain coordinates.
        MatrixXd down = D.base_basis.topRows(m0.size());
        Eigen::HouseholderQR<MatrixXd> qr(down);
        down = qr.householderQ() * MatrixXd::Identity(down.rows(), down.cols());
        rep.max_kernel_angle = principal_angles(down, Kdf).maxCoeff();
    } else {
        rep.max_kernel_angle = M_PI / 2.0;
    }

    // A-flat fields X(x) = g(x) P_D(x) v with non-constant scalars g, so the
    // acceleration and the bracket are genuinely nonzero A-flat vectors.
    const VectorXd v1 = Kdf.col(0);
    const VectorXd v2 = Kdf.cols() > 1 ? VectorXd(Kdf.col(1)) : VectorXd(Kdf.col(0));
    const VectorXd c1 = rng.unit_vector(static_cast<int>(m0.size()));
    const VectorXd c2 = rng.unit_vector(static_cast<int>(m0.size()));
    auto field = [&pb](const VectorXd& v0, const VectorXd& c) {
        return [&pb, v0, c](const VectorXd& x) -> VectorXd {
            return (1.0 + x.dot(c)) * (kernel_projector(pb, x) * v0);
        };
    };
    auto X = field(v1, c1);
    auto Y = field(v2, c2);

    const double h = 1e-5;
    const EmbeddedManifold& M = *pb.domain;
    auto dirderiv = [&](const std::function<VectorXd(const VectorXd&)>& f, const VectorXd& x,
                        const VectorXd& dir) {
        const VectorXd xp = M.retract(x + h * dir);
        const VectorXd xm = M.retract(x - h * dir);
        return VectorXd((f(xp) - f(xm)) / (2.0 * h));
    };

    // nabla_X X = tangent part of the derivative of X along itself.
    const VectorXd Xm = X(m0);
    const VectorXd accel = M.project_tangent(m0, dirderiv(X, m0, Xm));
    // Bracket [X, Y] = D_X Y - D_Y X (tangent automatically, projected anyway).
    const VectorXd Ym = Y(m0);
    const VectorXd bracket = M.project_tangent(m0, dirderiv(Y, m0, Xm) - dirderiv(X, m0, Ym));
    rep.accel_norm = accel.norm();
    rep.bracket_norm = bracket.norm();

    // A-flatness is measured on the unit vector; the zero vector is flat.
    auto a_norm_of = [&](const VectorXd& base_vec) {
        const double n = base_vec.norm();
        if (n < 1e-8) return 0.0;
        const VectorXd lift = pb.horizontal_lift_from_domain(p0, base_vec / n);
        return pb.bundle.a_operator_norm(p0, lift);
    };
    rep.accel_a_norm = a_norm_of(accel);
    rep.bracket_a_norm = a_norm_of(bracket);
    rep.pass = rep.max_kernel_angle < tol && rep.accel_a_norm < tol &&
               rep.bracket_a_norm < tol;
    return rep;
}

LeafGeodesyReport aflat_leaf_geodesy(const zoo::PullbackBundle& pb, const VectorXd& m0,
                                     Rng& rng, const TotallyGeodesicOptions& opts) {
    LeafGeodesyReport rep;

    const VectorXd p0 = pb.lift_point(m0, rng.unit_quaternion());
    const AFlatDistribution D = pb.bundle.a_flat_kernel(p0);
    const MatrixXd Kdf = pb.ker_df(m0);
    if (D.rank() == Kdf.cols() && D.rank() > 0) {
        MatrixXd down = D.base_basis.topRows(m0.size());
        Eigen::HouseholderQR<MatrixXd> qr(down);
        down = qr.householderQ() * MatrixXd::Identity(down.rows(), down.cols());
        rep.max_kernel_angle = principal_angles(down, Kdf).maxCoeff();
    } else {
        rep.max_kernel_angle = M_PI / 2.0;
    }

    // Trace leaf curves: velocities re-projected onto the distribution.
    const VectorXd b = pb.f.value(m0);
    const EmbeddedManifold& M = *pb.domain;
    std::vector<VectorXd> leaf_pts = {m0};
    const int n_curves = 2 * static_cast<int>(Kdf.cols());
    for (int c = 0; c < n_curves; ++c) {
        VectorXd x = m0;
        VectorXd dir = random_in_span(Kdf, rng);
        const double step = 0.05;
        for (int s = 0; s < 12; ++s) {
            const MatrixXd P = kernel_projector(pb, x);
            VectorXd v = P * dir;
            if (v.norm() < 1e-10) break;
            v *= step / v.norm();
            x = M.retract(x + v);
            leaf_pts.push_back(x);
            rep.trace_level_drift =
                std::max(rep.trace_level_drift, (pb.f.value(x) - b).norm());
        }
    }
    rep.traced_points = static_cast<int>(leaf_pts.size());

    // Totally-geodesic test of the leaf (= the fiber of f through m0).
    zoo::ZooMap zm;
    zm.name = pb.bundle.name + "-leaf";
    zm.map = pb.f_map;
    zm.sample_domain = [&M](Rng& r) { return M.retract(r.unit_vector(M.ambient_dim())); };
    const Submanifold S = zoo::fiber_submanifold(zm, b / b.norm());
    // Points: the traced ones, re-polished onto the fiber system.
    std::vector<VectorXd> pts;
    for (const VectorXd& x : leaf_pts) {
        try {
            pts.push_back(S.whole->retract(x));
        } catch (const RetractionError&) {
        }
    }
    rep.verdict = totally_geodesic_submanifold_test(S, pts, pb.f, b, rng, opts,
                                                    pb.bundle.name + "-leaf");
    return rep;
}

}  // namespace pullcurv::obs
