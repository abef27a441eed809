// pullcurv: experiment runner for curvature obstructions in pullback bundles.
//
// Each subcommand runs one experiment and writes a JSON report (and CSV data
// where a trace is produced). Reports are deterministic for a fixed
// (config, seed); wall-clock goes to stderr only.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <thread>

#include <CLI11.hpp>

#include "pullcurv/embedding.hpp"
#include "pullcurv/errors.hpp"
#include "pullcurv/obstruction.hpp"
#include "pullcurv/quatmat.hpp"
#include "pullcurv/report.hpp"
#include "pullcurv/spaces.hpp"
#include "pullcurv/version.hpp"

using namespace pullcurv;
using namespace pullcurv::spaces;
using pullcurv::report::json;

namespace {

struct CommonConfig {
    std::uint64_t seed = 12345;
    int samples = 100;
    int threads = 1;
    std::string out_dir;
    std::string format = "json";  // json | csv | both
    std::string config_file;
};

struct MapConfig {
    std::string map = "sp2";
    int k = 2;
    int n = 2;
    int m = 2;
    std::string which = "regular";  // regular | meridian | singular-leaf
};

std::string default_out_dir() {
    const char* env = std::getenv("PULLCURV_OUT_DIR");
    return env ? env : ".";
}

// Config-file values fill in any option the user did not pass on the line
// (flags > config file > defaults).
struct ConfigSlot {
    std::function<void(const json&)> apply;
};

void overlay_config(CLI::App* cmd, const std::string& path,
                    const std::map<std::string, ConfigSlot>& slots) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw Error("cannot read config file " + path);
    const json j = json::parse(in);
    for (auto& [key, value] : j.items()) {
        const auto it = slots.find(key);
        if (it == slots.end()) continue;
        CLI::Option* opt = cmd->get_option_no_throw("--" + key);
        if (opt && opt->count() > 0) continue;  // the flag wins
        it->second.apply(value);
    }
}

// Order-preserving parallel map: results land by index, reduction is
// sequential, so the output is independent of the thread count.
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) fn(i);
        });
    for (auto& th : pool) th.join();
}

int zoo_param(const MapConfig& mc) {
    if (mc.map == "rigas") return mc.k;
    if (mc.map == "cayley") return mc.n;
    if (mc.map == "wilhelm") return mc.m;
    if (mc.map == "kervaire") return mc.n;
    return 0;
}

std::string report_name(const std::string& experiment, const MapConfig* mc) {
    std::string name = experiment;
    if (mc) {
        name += "-" + mc->map;
        const int p = zoo_param(*mc);
        if (p != 0) name += "-" + std::to_string(p);
        if (mc->which != "regular") name += "-" + mc->which;
    }
    return name;
}

json base_report(const std::string& experiment, const CommonConfig& cc) {
    json j;
    j["schema"] = kReportSchema;
    j["experiment"] = experiment;
    j["library_version"] = kVersion;
    j["seed"] = cc.seed;
    j["samples"] = cc.samples;
    return j;
}

void emit(const CommonConfig& cc, const std::string& name, json& j,
          const std::string& csv = "") {
    const std::string dir = cc.out_dir;
    if (cc.format == "json" || cc.format == "both")
        report::write_atomic(dir + "/" + name + ".json", report::render(j));
    if ((cc.format == "csv" || cc.format == "both") && !csv.empty())
        report::write_atomic(dir + "/" + name + ".csv", csv);
    std::cout << report::render(j);
}

json verdict_json(const obs::GeodesyVerdict& gv) {
    json j;
    j["fiber_id"] = gv.fiber_id;
    j["max_ii"] = gv.max_ii;
    j["drift_raw"] = gv.max_drift_raw;
    j["drift_scaled"] = gv.drift_scaled;
    j["points_used"] = gv.points_used;
    j["pairs_per_point"] = gv.pairs_per_point;
    j["verdict_ii"] = obs::to_string(gv.verdict_ii);
    j["verdict_drift"] = obs::to_string(gv.verdict_drift);
    j["measures_agree"] = gv.measures_agree;
    j["verdict"] = obs::to_string(gv.verdict);
    if (!gv.note.empty()) j["note"] = gv.note;
    return j;
}

json thresholds_json(const obs::VerdictThresholds& t) {
    json j;
    j["pass_tol"] = t.pass_tol;
    j["fail_floor"] = t.fail_floor;
    return j;
}

// ----- experiments -----

int run_sp2_biinvariant(const CommonConfig& cc) {
    Rng rng(cc.seed);
    const auto M = sp2_manifold();
    const int N = cc.samples;

    std::vector<double> left(N), right(N);
    std::vector<VectorXd> pts(N);
    std::vector<QuatMat2> qs(N), rs(N);
    std::vector<std::pair<VectorXd, VectorXd>> dirs(N);
    for (int i = 0; i < N; ++i) {
        Rng r = rng.fork(i);
        pts[i] = zoo::sp2_random(r).to_vec();
        dirs[i] = {M->project_tangent(pts[i], r.gaussian_vector(16)),
                   M->project_tangent(pts[i], r.gaussian_vector(16))};
        qs[i] = QuatMat2::from_vec(zoo::sp2_random(r).to_vec());
        rs[i] = QuatMat2::from_vec(zoo::sp2_random(r).to_vec());
    }
    parallel_for(N, cc.threads, [&](int i) {
        const QuatMat2 A = QuatMat2::from_vec(pts[i]);
        const QuatMat2 V = QuatMat2::from_vec(dirs[i].first);
        const QuatMat2 W = QuatMat2::from_vec(dirs[i].second);
        const double g0 = dirs[i].first.dot(dirs[i].second);
        // Left translation by Q.
        {
            const VectorXd x = (qs[i] * A).to_vec();
            const VectorXd v = M->project_tangent(x, (qs[i] * V).to_vec());
            const VectorXd w = M->project_tangent(x, (qs[i] * W).to_vec());
            left[i] = std::abs(v.dot(w) - g0) +
                      M->constraint_residual(x).lpNorm<Eigen::Infinity>();
        }
        // Right translation by R.
        {
            const VectorXd x = (A * rs[i]).to_vec();
            const VectorXd v = M->project_tangent(x, (V * rs[i]).to_vec());
            const VectorXd w = M->project_tangent(x, (W * rs[i]).to_vec());
            right[i] = std::abs(v.dot(w) - g0) +
                       M->constraint_residual(x).lpNorm<Eigen::Infinity>();
        }
    });
    double max_left = 0, max_right = 0;
    for (int i = 0; i < N; ++i) {
        max_left = std::max(max_left, left[i]);
        max_right = std::max(max_right, right[i]);
    }

    // Geodesics through translates vs one-parameter subgroups.
    double max_geo = 0;
    const int ngeo = std::min(5, N);
    for (int i = 0; i < ngeo; ++i) {
        Rng r = rng.fork(1000 + i);
        const QuatMat2 A = QuatMat2::from_vec(zoo::sp2_random(r).to_vec());
        QuatMat2 xi = random_sp2_algebra(r);
        xi = xi * (1.0 / (A * xi).to_vec().norm());
        const GeodesicState end = M->geodesic({A.to_vec(), (A * xi).to_vec(), 0.0}, 1.0, 1e-3);
        max_geo = std::max(max_geo, (end.x - (A * qm_exp(xi)).to_vec()).norm());
    }

    json j = base_report("sp2-biinvariant", cc);
    j["thresholds"] = {{"isometry_tol", 1e-5}, {"geodesic_tol", 1e-5}};
    j["measures"] = {{"max_left_isometry_residual", max_left},
                     {"max_right_isometry_residual", max_right},
                     {"max_geodesic_vs_exp", max_geo},
                     {"geodesic_samples", ngeo}};
    j["verdict"] = (max_left < 1e-5 && max_right < 1e-5 && max_geo < 1e-5) ? "pass" : "fail";
    emit(cc, "sp2-biinvariant", j);
    return 0;
}

int run_hopf_fatness(const CommonConfig& cc) {
    Rng rng(cc.seed);
    const SubmersionBundle B = zoo::hopf_bundle();
    const auto S7 = sphere(8);
    const int N = cc.samples;

    std::vector<double> vert(N), cross(N);
    std::vector<int> kdim(N);
    std::vector<VectorXd> pts(N);
    std::vector<std::uint64_t> salts(N);
    for (int i = 0; i < N; ++i) {
        pts[i] = rng.unit_vector(8);
        salts[i] = rng.next_u64();
    }
    parallel_for(N, cc.threads, [&](int i) {
        Rng r(salts[i]);
        const VectorXd& p = pts[i];
        VectorXd X = B.horizontal_project(p, r.gaussian_vector(8));
        X /= X.norm();
        const MatrixXd V = B.vertical_frame(p);
        VectorXd U = V * r.gaussian_vector(3);
        U /= U.norm();
        vert[i] = B.vertizontal_curvature(p, X, U);
        cross[i] = std::abs(vert[i] - S7->sectional_curvature_unnormalized(p, X, U));
        kdim[i] = B.a_flat_kernel(p).rank();
    });
    double min_vert = 1e300, max_cross = 0;
    int max_kernel = 0;
    for (int i = 0; i < N; ++i) {
        min_vert = std::min(min_vert, vert[i]);
        max_cross = std::max(max_cross, cross[i]);
        max_kernel = std::max(max_kernel, kdim[i]);
    }
    json j = base_report("hopf-fatness", cc);
    j["thresholds"] = {{"fat_floor", 0.5}, {"crosscheck_tol", 1e-3}};
    j["measures"] = {{"min_vertizontal_curvature", min_vert},
                     {"max_total_space_crosscheck", max_cross},
                     {"max_kernel_rank", max_kernel}};
    j["verdict"] = (min_vert > 0.5 && max_cross < 1e-3 && max_kernel == 0) ? "pass" : "fail";
    emit(cc, "hopf-fatness", j);
    return 0;
}

zoo::PullbackBundle make_pullback(const MapConfig& mc) {
    if (mc.map == "sp2") return zoo::sp2_bundle();
    if (mc.map == "rigas") return zoo::rigas_bundle(mc.k);
    if (mc.map == "cayley") return zoo::cayley_bundle(mc.n);
    if (mc.map == "susp8") return zoo::susp8_bundle();
    throw DomainError("aflat-kernel: no pullback bundle for map '" + mc.map + "'");
}

int run_aflat_kernel(const CommonConfig& cc, const MapConfig& mc) {
    Rng rng(cc.seed);
    const zoo::PullbackBundle pb = make_pullback(mc);
    const int N = std::min(cc.samples, 40);  // kernel assembly is O(dh^2) A-evals
    const int expected = pb.domain->dim() - pb.f_map.rank(
        pb.domain->retract(rng.unit_vector(pb.domain->ambient_dim())));

    std::vector<int> ranks(N);
    std::vector<double> angles(N);
    std::vector<VectorXd> ms(N);
    std::vector<Quaternion> rots(N);
    for (int i = 0; i < N; ++i) {
        ms[i] = pb.domain->retract(rng.unit_vector(pb.domain->ambient_dim()));
        rots[i] = rng.unit_quaternion();
    }
    parallel_for(N, cc.threads, [&](int i) {
        const VectorXd p = pb.lift_point(ms[i], rots[i]);
        const AFlatDistribution D = pb.bundle.a_flat_kernel(p);
        ranks[i] = D.rank();
        const MatrixXd K = pb.ker_df(ms[i]);
        if (D.rank() == K.cols() && D.rank() > 0) {
            MatrixXd down = D.base_basis.topRows(ms[i].size());
            Eigen::HouseholderQR<MatrixXd> qr(down);
            down = qr.householderQ() * MatrixXd::Identity(down.rows(), down.cols());
            angles[i] = principal_angles(down, K).maxCoeff();
        } else {
            angles[i] = M_PI / 2;
        }
    });
    json hist = json::object();
    double max_angle = 0;
    bool rank_ok = true;
    for (int i = 0; i < N; ++i) {
        hist[std::to_string(ranks[i])] = hist.value(std::to_string(ranks[i]), 0) + 1;
        max_angle = std::max(max_angle, angles[i]);
        rank_ok = rank_ok && ranks[i] == expected;
    }
    json j = base_report("aflat-kernel", cc);
    j["map"] = mc.map;
    j["params"] = {{"k", mc.k}, {"n", mc.n}};
    j["thresholds"] = {{"angle_tol", 1e-4}};
    j["measures"] = {{"expected_rank", expected},
                     {"rank_histogram", hist},
                     {"max_principal_angle_vs_ker_df", max_angle}};
    j["verdict"] = (rank_ok && max_angle < 1e-4) ? "pass" : "fail";
    emit(cc, report_name("aflat-kernel", &mc), j);
    return 0;
}

int run_flat_rigidity(const CommonConfig& cc) {
    Rng rng(cc.seed);
    const zoo::PullbackBundle pb = zoo::sp2_bundle();
    const ManifoldPtr E = pb.bundle.total;
    const int N = cc.samples;

    std::vector<double> kplane(N), rnorm(N), sweep(N);
    std::vector<VectorXd> ms(N);
    std::vector<std::uint64_t> salts(N);
    for (int i = 0; i < N; ++i) {
        ms[i] = rng.unit_vector(8);
        salts[i] = rng.next_u64();
    }
    parallel_for(N, cc.threads, [&](int i) {
        Rng r(salts[i]);
        const VectorXd p = pb.lift_point(ms[i], r.unit_quaternion());
        const MatrixXd K = pb.ker_df(ms[i]);
        VectorXd X = VectorXd::Zero(p.size());
        X.head(ms[i].size()) = K * r.gaussian_vector(static_cast<int>(K.cols()));
        X = E->project_tangent(p, X);
        X /= X.norm();
        const MatrixXd V = pb.bundle.vertical_frame(p);
        VectorXd U = V * r.gaussian_vector(3);
        U /= U.norm();
        const RigidityReport rep = flat_section_rigidity_check(*E, p, X, U);
        kplane[i] = std::abs(rep.k_plane);
        rnorm[i] = rep.r_norm;
        sweep[i] = rep.sweep_min;
    });
    double max_k = 0, max_r = 0, min_sweep = 0;
    for (int i = 0; i < N; ++i) {
        max_k = std::max(max_k, kplane[i]);
        max_r = std::max(max_r, rnorm[i]);
        min_sweep = std::min(min_sweep, sweep[i]);
    }
    json j = base_report("flat-rigidity", cc);
    j["thresholds"] = {{"k_tol", 1e-5}, {"r_tol", 1e-4}, {"sweep_tol", -1e-6}};
    j["measures"] = {{"max_vertizontal_k", max_k},
                     {"max_r_xux_norm", max_r},
                     {"min_quadratic_sweep", min_sweep}};
    j["verdict"] = (max_k < 1e-5 && max_r < 1e-4 && min_sweep > -1e-6) ? "pass" : "fail";
    emit(cc, "flat-rigidity", j);
    return 0;
}

// Deterministic regular target value for a zoo map.
VectorXd pick_regular_value(const zoo::ZooMap& z, Rng& rng) {
    for (int tries = 0; tries < 50; ++tries) {
        const VectorXd x = z.sample_domain(rng);
        try {
            if (z.map.rank(x) == z.map.codomain->dim()) return z.eval(x);
        } catch (const Error&) {
        }
    }
    throw Error("could not find a regular value for " + z.name);
}

int run_fiber_geodesy(const CommonConfig& cc, const MapConfig& mc) {
    Rng rng(cc.seed);
    std::string fiber_csv;
    obs::TotallyGeodesicOptions opts;
    opts.pairs_per_point = 20;

    json j = base_report("fiber-geodesy", cc);
    j["map"] = mc.map;
    j["params"] = {{"k", mc.k}, {"n", mc.n}, {"m", mc.m}, {"which", mc.which}};
    j["thresholds"] = thresholds_json(opts.thresholds);

    if (mc.which == "meridian" || mc.which == "singular-leaf") {
        if (mc.map != "rigas")
            throw DomainError("--which " + mc.which + " is a rigas experiment");
        // Meridian preimage {Re(a conj b) = 0} resp. the singular-stratum
        // leaf (Hopf preimage of a critical latitude 2-sphere).
        const AmbientMap h = hopf_map();
        AmbientMap c;
        c.in_dim = 8;
        const bool leaf = mc.which == "singular-leaf";
        const double x0 = 0.6;
        c.out_dim = leaf ? 2 : 1;
        c.value = [h, leaf, x0](const VectorXd& q) {
            const VectorXd img = h.value(q);
            VectorXd o(leaf ? 2 : 1);
            if (leaf) {
                o[0] = img[0] - x0;
                o[1] = img[1];
            } else {
                o[0] = img[1];  // real part of the quaternion component of h
            }
            return o;
        };
        c.jac = [h, leaf](const VectorXd& q) -> MatrixXd {
            const MatrixXd J = h.jac(q);
            if (leaf) return J.topRows(2);
            return J.row(1);
        };
        c.hess_quad = [h, leaf](const VectorXd& q, const VectorXd& u, const VectorXd& v) {
            const VectorXd H = h.hess_quad(q, u, v);
            if (leaf) return VectorXd(H.head(2));
            VectorXd o(1);
            o[0] = H[1];
            return o;
        };
        const Submanifold S = make_submanifold(sphere(8), c, leaf ? 5 : 6,
                                               "rigas-" + mc.which);
        std::vector<VectorXd> pts;
        int tries = 0;
        while (static_cast<int>(pts.size()) < std::max(20, cc.samples / 10) && tries++ < 2000)
            try {
                pts.push_back(S.whole->retract(rng.unit_vector(8)));
            } catch (const RetractionError&) {
            }
        const obs::GeodesyVerdict gv = obs::totally_geodesic_submanifold_test(
            S, pts, c, VectorXd::Zero(c.out_dim), rng, opts, "rigas-" + mc.which);
        j["measures"] = verdict_json(gv);
        j["verdict"] = obs::to_string(gv.verdict);
        emit(cc, report_name("fiber-geodesy", &mc), j);
        return 0;
    }

    const zoo::ZooMap z = zoo::make_zoo_map(mc.map, zoo_param(mc));
    if (mc.map == "kervaire") {
        const VectorXd zt = rng.unit_vector(2 * mc.n + 1);
        const zoo::FiberSample fs = zoo::kervaire_fiber(mc.n, zt, -0.5, cc.samples, rng);
        fiber_csv = zoo::fiber_sample_csv(fs);
        const Submanifold S = zoo::fiber_submanifold(z, zt);
        const obs::GeodesyVerdict gv = obs::totally_geodesic_submanifold_test(
            S, fs.points, z.map.map, zt, rng, opts, "kervaire-fiber");
        j["measures"] = verdict_json(gv);
        j["verdict"] = obs::to_string(gv.verdict);
        emit(cc, report_name("fiber-geodesy", &mc), j, fiber_csv);
        return 0;
    }

    const VectorXd b = pick_regular_value(z, rng);
    const zoo::FiberSample fs = zoo::fiber_sample(z, b, cc.samples, rng);
    const obs::GeodesyVerdict gv = obs::totally_geodesic_test(z, b, fs, rng, opts);
    j["measures"] = verdict_json(gv);
    j["measures"]["fiber_points"] = static_cast<int>(fs.points.size());
    j["measures"]["fiber_components"] = fs.n_components;
    fiber_csv = zoo::fiber_sample_csv(fs);
    if (mc.map == "wilhelm") {
        // The pole fibers are products of great spheres and do pass; generic
        // regular fibers measurably fail. Both are reported.
        VectorXd pole = VectorXd::Zero(5);
        pole[0] = 1.0;
        const zoo::FiberSample fsp = zoo::fiber_sample(z, pole, cc.samples, rng);
        const obs::GeodesyVerdict gvp = obs::totally_geodesic_test(z, pole, fsp, rng, opts);
        j["measures"]["pole_fiber"] = verdict_json(gvp);
    }
    j["verdict"] = obs::to_string(gv.verdict);
    emit(cc, report_name("fiber-geodesy", &mc), j, fiber_csv);
    return 0;
}

int run_degenerate(const CommonConfig& cc, const MapConfig& mc, double theta_start,
                   double theta_end, int steps) {
    if (mc.map != "cayley") throw DomainError("degenerate: only --map cayley is defined");
    Rng rng(cc.seed);
    const obs::DegenerationTrace tr =
        obs::degeneration_trace(mc.n, theta_start, theta_end, steps, cc.samples, rng);

    json j = base_report("degenerate", cc);
    j["map"] = mc.map;
    j["params"] = {{"n", mc.n},
                   {"theta_start", theta_start},
                   {"theta_end", theta_end},
                   {"steps", steps}};
    j["thresholds"] = {{"identity_tol", 1e-6}, {"bound_slack", 1e-6}};
    double max_identity = 0;
    for (const auto& r : tr.rows) max_identity = std::max(max_identity, r.identity_residual);
    j["measures"] = {{"eta_min_interior", tr.eta_min_interior},
                     {"max_identity_residual", max_identity},
                     {"full_cap_bound_ok", tr.bound_ok},
                     {"interior_bound_ok", tr.interior_bound_ok},
                     {"interior_monotone", tr.interior_monotone_ok},
                     {"final_interior_max_b_sq", tr.final_interior_max_b_sq},
                     {"final_full_cap_max_b_sq", tr.final_max_b_sq}};
    j["verdict"] = (tr.bound_ok && tr.interior_bound_ok && tr.interior_monotone_ok &&
                    max_identity < 1e-6)
                       ? "pass"
                       : "fail";
    emit(cc, report_name("degenerate", &mc), j, obs::degeneration_trace_csv(tr));
    return 0;
}

int run_radial_projection(const CommonConfig& cc, const MapConfig& mc) {
    Rng rng(cc.seed);
    json j = base_report("radial-projection", cc);
    j["map"] = mc.map;
    obs::ImmersionReport rep;

    if (mc.map == "sp2") {
        const zoo::ZooMap z = zoo::zoo_sp2();
        const VectorXd b0 = pick_regular_value(z, rng);
        VectorXd b1 = (b0 + 0.08 * rng.unit_vector(5)).normalized();
        const Submanifold S = zoo::fiber_submanifold(z, b0);
        const zoo::FiberSample Sfs = zoo::fiber_sample(z, b0, 40, rng);
        const zoo::FiberSample Lfs = zoo::fiber_sample(z, b1, std::min(cc.samples, 20), rng);
        rep = obs::radial_projection_immersion_test(S, Lfs.points, Lfs.frames, Sfs.points);
    } else if (mc.map == "susp8") {
        const zoo::ZooMap z = zoo::zoo_susp8();
        const VectorXd b = pick_regular_value(z, rng);
        const zoo::FiberSample fs = zoo::fiber_sample(z, b, std::min(cc.samples, 20), rng);
        const Submanifold S = great_subsphere(sphere(9), {4, 5, 6, 7, 8}, "x-sphere");
        std::vector<VectorXd> starts;
        for (int i = 0; i < 10; ++i) {
            VectorXd s = VectorXd::Zero(9);
            s.head(4) = rng.unit_vector(4);
            starts.push_back(s);
        }
        rep = obs::radial_projection_immersion_test(S, fs.points, fs.frames, starts);
    } else if (mc.map == "cayley") {
        // Interior cap points of a near-degenerate fiber against the
        // meridian 3-sphere {(a,0)}; the verdict here is evidence only (the
        // topological step is not a numerical statement).
        const zoo::ZooMap z = zoo::zoo_cayley(mc.n);
        const double theta = M_PI - 0.05;
        VectorXd b(5);
        b << std::cos(theta), std::sin(theta), 0, 0, 0;
        std::vector<VectorXd> starts;
        for (int i = 0; i < cc.samples; ++i) {
            VectorXd s(8);
            s.head(4) = rng.unit_vector(4);
            s.tail(4) = rng.uniform(0.01, 0.2) * rng.unit_vector(4);
            s /= s.norm();
            starts.push_back(s);
        }
        const zoo::FiberSample fs = zoo::fiber_sample(z, b, cc.samples, rng, {}, starts);
        std::vector<VectorXd> pts;
        std::vector<MatrixXd> frames;
        for (std::size_t i = 0; i < fs.points.size(); ++i) {
            const double t = zoo::s7_angle(fs.points[i]);
            if (t <= M_PI / (2.0 * mc.n) && fs.points[i].tail(4).norm() < 0.2) {
                pts.push_back(fs.points[i]);
                frames.push_back(fs.frames[i]);
            }
        }
        const Submanifold S = great_subsphere(sphere(8), {4, 5, 6, 7}, "meridian-sphere");
        std::vector<VectorXd> st;
        for (int i = 0; i < 10; ++i) {
            VectorXd s = VectorXd::Zero(8);
            s.head(4) = rng.unit_vector(4);
            st.push_back(s);
        }
        rep = obs::radial_projection_immersion_test(S, pts, frames, st);
        rep.note = "local immersion evidence near the pole; the obstruction itself is the "
                   "topological step (a 3-sphere cannot embed in a 3-ball)";
    } else {
        throw DomainError("radial-projection: --map must be sp2, susp8 or cayley");
    }

    json ranks = json::array();
    for (int r : rep.rank_profile) ranks.push_back(r);
    j["measures"] = {{"dim_fiber", rep.dim_fiber},
                     {"dim_target", rep.dim_target},
                     {"structural_obstruction", rep.structural_obstruction},
                     {"max_tube_distance", rep.max_tube_distance},
                     {"min_singular_value", rep.min_singular},
                     {"rank_profile", ranks},
                     {"immersion", rep.immersion}};
    if (!rep.note.empty()) j["measures"]["note"] = rep.note;
    j["verdict"] = rep.structural_obstruction ? "fail" : (rep.immersion ? "pass" : "fail");
    emit(cc, report_name("radial-projection", &mc), j);
    return 0;
}

int run_stability_probe(const CommonConfig& cc, const std::string& model, double delta) {
    Rng rng(cc.seed);
    json j = base_report("stability-probe", cc);
    j["params"] = {{"model", model}, {"delta", delta}};

    Submanifold S = [&]() -> Submanifold {
        if (model == "great-circle") return great_subsphere(sphere(4), {2, 3}, "great-circle");
        if (model == "hopf-fiber") {
            Rng r(cc.seed + 1);
            const zoo::ZooMap z = zoo::zoo_sp2();
            return zoo::fiber_submanifold(z, z.eval(r.unit_vector(8)));
        }
        throw DomainError("stability-probe: --model must be great-circle or hopf-fiber");
    }();

    std::vector<VectorXd> pts;
    if (model == "great-circle") {
        for (int i = 0; i < 12; ++i) {
            VectorXd p = VectorXd::Zero(4);
            const double s = 2.0 * M_PI * i / 12;
            p[0] = std::cos(s);
            p[1] = std::sin(s);
            pts.push_back(p);
        }
    } else {
        Rng r(cc.seed + 1);
        const zoo::ZooMap z = zoo::zoo_sp2();
        const VectorXd b = z.eval(r.unit_vector(8));
        pts = zoo::fiber_sample(z, b, 24, r).points;
    }

    const int ng = std::max(3, cc.samples / 20);
    const obs::StabilityProbe probe = obs::stability_bound_probe(S, pts, delta, ng, rng);
    j["thresholds"] = {{"c_floor", 0.2}, {"hessian_tol", 1e-3}};
    j["measures"] = {{"geodesics", probe.geodesics},
                     {"fitted_c_min", probe.fitted_c_min},
                     {"hessian_margin", probe.hessian_margin},
                     {"pure_normal_h_residual", probe.pure_normal_h_residual}};
    j["verdict"] = (probe.c_ok && probe.hessian_ok) ? "pass" : "fail";
    emit(cc, "stability-probe-" + model, j);
    return 0;
}

int run_graph_metric_agreement(const CommonConfig& cc) {
    Rng rng(cc.seed);
    obs::TotallyGeodesicOptions opts;
    opts.max_points = 15;
    opts.pairs_per_point = 12;
    opts.geodesic_starts = 3;

    json cases = json::array();
    bool all_agree = true;
    for (int k : {1, 2}) {
        const zoo::ZooMap z = zoo::zoo_rigas(k);
        const VectorXd b = pick_regular_value(z, rng);
        const zoo::FiberSample fs = zoo::fiber_sample(z, b, 60, rng);
        const obs::GeodesyVerdict gv_m = obs::totally_geodesic_test(z, b, fs, rng, opts);

        // Same fiber measured in the graph metric of r_k.
        AmbientMap chartF = zoo::fiber_submanifold(z, b).whole->constraints();
        // Extract the extra rows (beyond the sphere constraint).
        AmbientMap extra;
        extra.in_dim = 8;
        extra.out_dim = 4;
        extra.value = [chartF](const VectorXd& x) -> VectorXd {
            return chartF.value(x).tail(4);
        };
        extra.jac = [chartF](const VectorXd& x) -> MatrixXd {
            return chartF.jacobian(x).bottomRows(4);
        };
        const obs::GeodesyVerdict gv_g = obs::totally_geodesic_graph_test(
            sphere(8), z.map.map, extra, 3, fs.points, rng, opts,
            "rigas-" + std::to_string(k) + "-graph");

        const bool agree = gv_m.verdict == gv_g.verdict;
        all_agree = all_agree && agree;
        json c;
        c["k"] = k;
        c["which"] = "regular";
        c["m_metric"] = verdict_json(gv_m);
        c["graph_metric"] = verdict_json(gv_g);
        c["agree"] = agree;
        cases.push_back(c);
    }

    // Meridian preimage for k = 2 in both metrics.
    {
        const zoo::ZooMap z = zoo::zoo_rigas(2);
        const AmbientMap h = hopf_map();
        AmbientMap c;
        c.in_dim = 8;
        c.out_dim = 1;
        c.value = [h](const VectorXd& q) -> VectorXd { return h.value(q).segment(1, 1); };
        c.jac = [h](const VectorXd& q) -> MatrixXd { return h.jac(q).row(1); };
        c.hess_quad = [h](const VectorXd& q, const VectorXd& u, const VectorXd& v) -> VectorXd {
            return h.hess_quad(q, u, v).segment(1, 1);
        };
        const Submanifold L = make_submanifold(sphere(8), c, 6, "meridian");
        std::vector<VectorXd> pts;
        int tries = 0;
        while (pts.size() < 15 && tries++ < 500)
            try {
                pts.push_back(L.whole->retract(rng.unit_vector(8)));
            } catch (const RetractionError&) {
            }
        const obs::GeodesyVerdict gv_m = obs::totally_geodesic_submanifold_test(
            L, pts, c, VectorXd::Zero(1), rng, opts, "rigas-2-meridian");
        const obs::GeodesyVerdict gv_g = obs::totally_geodesic_graph_test(
            sphere(8), z.map.map, c, 6, pts, rng, opts, "rigas-2-meridian-graph");
        const bool agree = gv_m.verdict == gv_g.verdict;
        all_agree = all_agree && agree;
        json cj;
        cj["k"] = 2;
        cj["which"] = "meridian";
        cj["m_metric"] = verdict_json(gv_m);
        cj["graph_metric"] = verdict_json(gv_g);
        cj["agree"] = agree;
        cases.push_back(cj);
    }

    json j = base_report("graph-metric-agreement", cc);
    j["thresholds"] = thresholds_json(opts.thresholds);
    j["measures"] = {{"cases", cases}, {"all_agree", all_agree}};
    j["verdict"] = all_agree ? "pass" : "fail";
    emit(cc, "graph-metric-agreement", j);
    return 0;
}

json catalog() {
    json items = json::array();
    auto add = [&](const std::string& name, const std::string& claim,
                   const std::string& anchor, const json& defaults) {
        json it;
        it["name"] = name;
        it["claim"] = claim;
        it["anchor"] = anchor;
        it["defaults"] = defaults;
        items.push_back(it);
    };
    add("sp2-biinvariant",
        "the pullback metric on Sp(2) is biinvariant and its geodesics through translates are "
        "one-parameter subgroups",
        "examples/sp2", {{"samples", 100}});
    add("hopf-fatness",
        "the Hopf bundle is fat: vertizontal curvatures equal 1 and the A-flat kernel is trivial",
        "flat-sections/non-degeneracy", {{"samples", 60}});
    add("aflat-kernel",
        "for pullbacks of the Hopf bundle the A-flat kernel equals ker df (dimension 3 over "
        "S^7)",
        "flat-sections/kernel", {{"map", "sp2"}, {"samples", 25}});
    add("flat-rigidity",
        "on non-negatively curved Sp(2), flat vertizontal planes force R(X,U)X = 0 and a "
        "non-negative quadratic sweep",
        "flat-sections/rigidity", {{"samples", 100}});
    add("fiber-geodesy",
        "totally-geodesic verdicts for the example fibers (maps: "
        "sp2|wilhelm|rigas|cayley|susp8|kervaire)",
        "examples/fibers", {{"map", "rigas"}, {"k", 2}, {"which", "regular"}});
    add("degenerate",
        "fiber degeneration of the exotic 7-sphere maps: the interior cap collar shrinks onto "
        "the meridian at the closed-form rate",
        "examples/exotic7", {{"map", "cayley"}, {"n", 2}, {"steps", 12}});
    add("radial-projection",
        "radial-projection immersion evidence near singular fibers (hopf model passes; susp8 "
        "hits the 4-into-3 dimension obstruction)",
        "stability/immersion", {{"map", "susp8"}});
    add("stability-probe",
        "near a compact submanifold, normal-fiber geodesics satisfy h(t) >= t^2/5 and the "
        "9/10 - 1/10 Hessian inequality",
        "stability/bounds", {{"model", "great-circle"}, {"delta", 0.3}});
    add("graph-metric-agreement",
        "totally-geodesic verdicts agree between the round metric and the graph metric",
        "pullback-geometry/graph", {{"k", 2}});
    return items;
}

int run_list(bool as_json) {
    const json items = catalog();
    if (as_json) {
        json j;
        j["schema"] = kReportSchema;
        j["experiments"] = items;
        std::cout << report::render(j);
        return 0;
    }
    for (const auto& it : items) {
        std::cout << it["name"].get<std::string>() << "\n    claim:  "
                  << it["claim"].get<std::string>() << "\n    anchor: "
                  << it["anchor"].get<std::string>() << "\n    defaults: " << it["defaults"]
                  << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pullcurv: curvature obstructions in pullback bundles, at desk scale"};
    app.require_subcommand(1);

    CommonConfig cc;
    cc.out_dir = default_out_dir();
    MapConfig mc;
    double theta_start = M_PI - 0.5, theta_end = M_PI - 0.0141421;
    int steps = 12;
    double delta = 0.3;
    std::string model = "great-circle";
    bool list_json = false;
    std::string verify_name;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", cc.seed, "RNG seed (recorded in the report)");
        cmd->add_option("--samples", cc.samples, "sample count");
        cmd->add_option("--threads", cc.threads, "worker threads for sample loops");
        cmd->add_option("--out-dir", cc.out_dir, "report directory");
        cmd->add_option("--format", cc.format, "json | csv | both")
            ->check(CLI::IsMember({"json", "csv", "both"}));
        cmd->add_option("--config", cc.config_file, "JSON config file (flags win)");
    };
    auto add_map = [&](CLI::App* cmd, bool with_which = false) {
        cmd->add_option("--map", mc.map, "sp2 | wilhelm | rigas | cayley | susp8 | kervaire");
        cmd->add_option("--k", mc.k, "rigas power");
        cmd->add_option("--n", mc.n, "cayley/kervaire power");
        cmd->add_option("--m", mc.m, "wilhelm chain length");
        if (with_which)
            cmd->add_option("--which", mc.which, "regular | meridian | singular-leaf")
                ->check(CLI::IsMember({"regular", "meridian", "singular-leaf"}));
    };

    CLI::App* c_list = app.add_subcommand("list", "catalog of experiments");
    c_list->add_flag("--json", list_json, "machine-readable catalog");

    CLI::App* c_verify = app.add_subcommand("verify", "run an experiment by name");
    c_verify->add_option("name", verify_name, "experiment name")->required();
    add_common(c_verify);
    add_map(c_verify, true);

    CLI::App* c_sp2 = app.add_subcommand("sp2-biinvariant", "biinvariance of the Sp(2) metric");
    add_common(c_sp2);

    CLI::App* c_fat = app.add_subcommand("hopf-fatness", "fatness of the Hopf bundle");
    add_common(c_fat);
    CLI::App* c_ker = app.add_subcommand("aflat-kernel", "A-flat kernel vs ker df");
    add_common(c_ker);
    add_map(c_ker);
    CLI::App* c_rig = app.add_subcommand("flat-rigidity", "flat vertizontal rigidity on Sp(2)");
    add_common(c_rig);
    CLI::App* c_fib = app.add_subcommand("fiber-geodesy", "totally-geodesic fiber verdicts");
    add_common(c_fib);
    add_map(c_fib, true);
    CLI::App* c_deg = app.add_subcommand("degenerate", "fiber degeneration trace");
    add_common(c_deg);
    add_map(c_deg);
    c_deg->add_option("--theta-start", theta_start, "grid start");
    c_deg->add_option("--theta-end", theta_end, "grid end (< pi)");
    c_deg->add_option("--steps", steps, "grid steps");
    CLI::App* c_rad = app.add_subcommand("radial-projection", "closest-point immersion test");
    add_common(c_rad);
    add_map(c_rad);
    CLI::App* c_sta = app.add_subcommand("stability-probe", "quadratic growth of eta");
    add_common(c_sta);
    c_sta->add_option("--model", model, "great-circle | hopf-fiber");
    c_sta->add_option("--delta", delta, "tube radius (delta^2 < 1/5)");
    CLI::App* c_gra = app.add_subcommand("graph-metric-agreement",
                                         "round vs graph metric verdicts");
    add_common(c_gra);
    c_gra->add_option("--k", mc.k, "rigas power");

    CLI11_PARSE(app, argc, argv);

    const auto t0 = std::chrono::steady_clock::now();
    int rc = 0;
    std::string experiment;
    try {
        if (c_list->parsed()) return run_list(list_json);

        CLI::App* active = app.get_subcommands().front();
        const std::map<std::string, ConfigSlot> slots = {
            {"seed", {[&](const json& v) { cc.seed = v.get<std::uint64_t>(); }}},
            {"samples", {[&](const json& v) { cc.samples = v.get<int>(); }}},
            {"threads", {[&](const json& v) { cc.threads = v.get<int>(); }}},
            {"out-dir", {[&](const json& v) { cc.out_dir = v.get<std::string>(); }}},
            {"format", {[&](const json& v) { cc.format = v.get<std::string>(); }}},
            {"map", {[&](const json& v) { mc.map = v.get<std::string>(); }}},
            {"k", {[&](const json& v) { mc.k = v.get<int>(); }}},
            {"n", {[&](const json& v) { mc.n = v.get<int>(); }}},
            {"m", {[&](const json& v) { mc.m = v.get<int>(); }}},
            {"which", {[&](const json& v) { mc.which = v.get<std::string>(); }}},
            {"theta-start", {[&](const json& v) { theta_start = v.get<double>(); }}},
            {"theta-end", {[&](const json& v) { theta_end = v.get<double>(); }}},
            {"steps", {[&](const json& v) { steps = v.get<int>(); }}},
            {"model", {[&](const json& v) { model = v.get<std::string>(); }}},
            {"delta", {[&](const json& v) { delta = v.get<double>(); }}},
        };
        overlay_config(active, cc.config_file, slots);

        experiment = active->get_name();
        if (c_verify->parsed()) experiment = verify_name;

        // Per-experiment default sample counts when neither flag nor config
        // provided one.
        bool samples_from_config = false;
        if (!cc.config_file.empty()) {
            std::ifstream in(cc.config_file);
            if (in) samples_from_config = json::parse(in).contains("samples");
        }
        auto defaulted = [&](CLI::App* cmd, int dflt) {
            if (!samples_from_config && cmd->get_option_no_throw("--samples") &&
                cmd->get_option("--samples")->count() == 0)
                cc.samples = dflt;
        };

        if (experiment == "sp2-biinvariant") {
            defaulted(active, 100);
            rc = run_sp2_biinvariant(cc);
        } else if (experiment == "hopf-fatness") {
            defaulted(active, 60);
            rc = run_hopf_fatness(cc);
        } else if (experiment == "aflat-kernel") {
            defaulted(active, 25);
            rc = run_aflat_kernel(cc, mc);
        } else if (experiment == "flat-rigidity") {
            defaulted(active, 100);
            rc = run_flat_rigidity(cc);
        } else if (experiment == "fiber-geodesy") {
            defaulted(active, 500);
            rc = run_fiber_geodesy(cc, mc);
        } else if (experiment == "degenerate") {
            defaulted(active, 150);
            rc = run_degenerate(cc, mc, theta_start, theta_end, steps);
        } else if (experiment == "radial-projection") {
            defaulted(active, 60);
            rc = run_radial_projection(cc, mc);
        } else if (experiment == "stability-probe") {
            defaulted(active, 100);
            rc = run_stability_probe(cc, model, delta);
        } else if (experiment == "graph-metric-agreement") {
            rc = run_graph_metric_agreement(cc);
        } else {
            std::cerr << "unknown experiment: " << experiment << "\n";
            return 2;
        }
    } catch (const std::exception& e) {
        json j;
        j["schema"] = kReportSchema;
        j["experiment"] = experiment;
        j["error"] = {{"type", "experiment_error"}, {"message", e.what()}};
        try {
            report::write_atomic(cc.out_dir + "/" + experiment + "-error.json",
                                 report::render(j));
        } catch (...) {
        }
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    const auto t1 = std::chrono::steady_clock::now();
    std::cerr << "wall-clock: "
              << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
              << " ms\n";
    return rc;
}
