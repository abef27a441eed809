#include "pullcurv/mapzoo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pullcurv/embedding.hpp"
#include "pullcurv/errors.hpp"
#include "pullcurv/spaces.hpp"
#include "pullcurv/sphere_maps.hpp"

namespace pullcurv::zoo {

using namespace pullcurv::spaces;

// ----- Sp(2) -----

VectorXd Sp2Element::to_vec() const {
    VectorXd x(16);
    x.segment(0, 4) = pullcurv::to_vec(a);
    x.segment(4, 4) = pullcurv::to_vec(b);
    x.segment(8, 4) = pullcurv::to_vec(c);
    x.segment(12, 4) = pullcurv::to_vec(d);
    return x;
}

Sp2Element Sp2Element::from_vec(const VectorXd& x) {
    return {to_quat(x.segment(0, 4)), to_quat(x.segment(4, 4)), to_quat(x.segment(8, 4)),
            to_quat(x.segment(12, 4))};
}

double Sp2Element::membership_residual() const {
    const double r1 = std::abs(a.norm_sq() + b.norm_sq() - 1.0);
    const double r2 = std::abs(c.norm_sq() + d.norm_sq() - 1.0);
    const double r3 = (a.conj() * c + b.conj() * d).norm();
    return std::max({r1, r2, r3});
}

Sp2Element sp2_random(Rng& rng) {
    for (;;) {
        Quaternion a = rng.gaussian_quaternion(), b = rng.gaussian_quaternion();
        const double n1 = std::sqrt(a.norm_sq() + b.norm_sq());
        if (n1 < 1e-8) continue;
        a = a / n1;
        b = b / n1;
        Quaternion c = rng.gaussian_quaternion(), d = rng.gaussian_quaternion();
        // Quaternionic Gram-Schmidt: subtract the H-projection onto (a,b).
        const Quaternion inner = a.conj() * c + b.conj() * d;
        c = c - a * inner;
        d = d - b * inner;
        const double n2 = std::sqrt(c.norm_sq() + d.norm_sq());
        if (n2 < 1e-8) continue;
        return {a, b, c / n2, d / n2};
    }
}

VectorXd hopf_fiber_point(const VectorXd& b, const Quaternion& q) {
    if (b.size() != 5) throw DomainError("hopf_fiber_point: expected a point of R^5");
    const double b0 = b[0];
    Quaternion pa, pb;
    if (b0 > -1.0 + 1e-12) {
        const double a0 = std::sqrt((1.0 + b0) / 2.0);
        pa = Quaternion(a0, 0, 0, 0);
        pb = to_quat(b.tail(4)).conj() / (2.0 * a0);
    } else {
        pa = Quaternion();
        pb = Quaternion::identity();
    }
    VectorXd p(8);
    p.head(4) = pullcurv::to_vec(pa * q);
    p.tail(4) = pullcurv::to_vec(pb * q);
    return p / p.norm();
}

double s7_angle(const VectorXd& x) { return to_oct(x).angle(); }

VectorXd s7_from_angle(double t, const Quaternion& p, const Quaternion& w) {
    VectorXd x(8);
    x.head(4) = pullcurv::to_vec(Quaternion(std::cos(t), 0, 0, 0) + std::sin(t) * p);
    x.tail(4) = pullcurv::to_vec(std::sin(t) * w);
    return x;
}

// ----- zoo maps -----

namespace {

std::function<VectorXd(Rng&)> sphere_sampler(int amb) {
    return [amb](Rng& rng) { return rng.unit_vector(amb); };
}

}  // namespace

ZooMap zoo_sp2() {
    ZooMap z;
    z.name = "sp2";
    z.map = SmoothMap{sphere(8), sphere(5), scale_map(-1.0, hopf_map())};
    z.sample_domain = sphere_sampler(8);
    return z;
}

ZooMap zoo_wilhelm(int m) {
    if (m < 2) throw DomainError("zoo_wilhelm: m >= 2 required");
    ZooMap z;
    z.name = "wilhelm";
    z.param = m;
    const ManifoldPtr W = wilhelm_manifold(m);
    z.map = SmoothMap{W, sphere(5),
                      compose(dual_hopf_map(), slice_map(8 * m, 8 * (m - 1), 8))};
    z.sample_domain = [m](Rng& rng) { return wilhelm_random_point(m, rng); };
    return z;
}

ZooMap zoo_rigas(int k) {
    ZooMap z;
    z.name = "rigas";
    z.param = k;
    z.map = SmoothMap{sphere(8), sphere(5), compose(suspension_power_map(k), hopf_map())};
    z.sample_domain = sphere_sampler(8);
    return z;
}

ZooMap zoo_cayley(int n) {
    ZooMap z;
    z.name = "cayley";
    z.param = n;
    z.map = SmoothMap{sphere(8), sphere(5),
                      compose(scale_map(-1.0, hopf_map()), cayley_power_map(n))};
    z.sample_domain = sphere_sampler(8);
    return z;
}

ZooMap zoo_susp8() {
    ZooMap z;
    z.name = "susp8";
    z.map = SmoothMap{sphere(9), sphere(5),
                      compose(scale_map(-1.0, hopf_map()), susp8_phi_map())};
    z.sample_domain = sphere_sampler(9);
    return z;
}

ZooMap zoo_kervaire(int n) {
    if (n < 1) throw DomainError("zoo_kervaire: n >= 1 required");
    ZooMap z;
    z.name = "kervaire";
    z.param = n;
    z.map = SmoothMap{sphere(4 * n + 2), sphere(2 * n + 1), kervaire_map(n)};
    z.sample_domain = sphere_sampler(4 * n + 2);
    return z;
}

ZooMap make_zoo_map(const std::string& name, int param) {
    if (name == "sp2") return zoo_sp2();
    if (name == "wilhelm") return zoo_wilhelm(param > 0 ? param : 2);
    if (name == "rigas") return zoo_rigas(param);
    if (name == "cayley") return zoo_cayley(param);
    if (name == "susp8") return zoo_susp8();
    if (name == "kervaire") return zoo_kervaire(param > 0 ? param : 1);
    throw DomainError("unknown zoo map: " + name);
}

double cayley_first_coordinate(int n, double t, const Quaternion& w) {
    const double s = std::sin(n * t);
    return 2.0 * s * s * w.norm_sq() - 1.0;
}

// ----- fiber machinery -----

namespace {

// Stereographic chart of the unit sphere centered at b (projection from -b):
// chart(b) = 0 and the chart is a diffeomorphism away from the antipode.
AmbientMap stereographic_chart(const VectorXd& b) {
    const int n = static_cast<int>(b.size());
    const MatrixXd B = orthogonal_complement(b / b.norm());
    const VectorXd bh = b / b.norm();
    AmbientMap m;
    m.in_dim = n;
    m.out_dim = n - 1;
    m.value = [B, bh](const VectorXd& z) -> VectorXd {
        return B.transpose() * z / (1.0 + z.dot(bh));
    };
    m.jac = [B, bh](const VectorXd& z) -> MatrixXd {
        const double s = 1.0 + z.dot(bh);
        return B.transpose() / s - (B.transpose() * z) * bh.transpose() / (s * s);
    };
    return m;
}

bool newton_solve(const AmbientMap& G, VectorXd& x, int max_iter, double tol) {
    for (int it = 0; it < max_iter; ++it) {
        VectorXd c;
        try {
            c = G.value(x);
        } catch (const Error&) {
            return false;
        }
        if (!c.allFinite()) return false;
        if (c.lpNorm<Eigen::Infinity>() < tol) return true;
        MatrixXd J;
        try {
            J = G.jacobian(x);
        } catch (const Error&) {
            return false;
        }
        if (!J.allFinite()) return false;
        x += J.completeOrthogonalDecomposition().solve(-c);
    }
    return G.value(x).lpNorm<Eigen::Infinity>() < tol;
}

std::vector<int> label_components(const std::vector<VectorXd>& pts, double mesh_factor,
                                  int* n_components) {
    const int n = static_cast<int>(pts.size());
    std::vector<int> label(n, -1);
    if (n == 0) {
        *n_components = 0;
        return label;
    }
    // Median nearest-neighbour distance sets the linking scale.
    std::vector<double> nn(n, std::numeric_limits<double>::infinity());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = (pts[i] - pts[j]).norm();
            nn[i] = std::min(nn[i], d);
            nn[j] = std::min(nn[j], d);
        }
    std::vector<double> sorted = nn;
    std::sort(sorted.begin(), sorted.end());
    const double link = mesh_factor * sorted[n / 2];

    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if ((pts[i] - pts[j]).norm() < link) parent[find(i)] = find(j);

    int next = 0;
    std::vector<int> remap(n, -1);
    for (int i = 0; i < n; ++i) {
        const int r = find(i);
        if (remap[r] < 0) remap[r] = next++;
        label[i] = remap[r];
    }

    // Attach sub-scale fragments (sampling stragglers) to the component of
    // their nearest differently-labeled point.
    const int min_size = std::max(3, n / 25);
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<int> sizes(next, 0);
        for (int l : label) ++sizes[l];
        for (int i = 0; i < n; ++i) {
            if (sizes[label[i]] >= min_size) continue;
            double best = std::numeric_limits<double>::infinity();
            int target = label[i];
            for (int j = 0; j < n; ++j) {
                if (label[j] == label[i]) continue;
                const double d = (pts[i] - pts[j]).norm();
                if (d < best) {
                    best = d;
                    target = label[j];
                }
            }
            if (target != label[i]) {
                label[i] = target;
                changed = true;
            }
        }
    }
    // Compact the labels.
    std::vector<int> used(next, -1);
    int compact = 0;
    for (int i = 0; i < n; ++i) {
        if (used[label[i]] < 0) used[label[i]] = compact++;
        label[i] = used[label[i]];
    }
    *n_components = compact;
    return label;
}

}  // namespace

Submanifold fiber_submanifold(const ZooMap& map, const VectorXd& b) {
    const AmbientMap chart = stereographic_chart(b);
    const AmbientMap extra = compose(chart, map.map.map);
    const int dim = map.map.domain->dim() - map.map.codomain->dim();
    return make_submanifold(map.map.domain, extra,
                            dim, map.name + "-fiber");
}

FiberSample fiber_sample(const ZooMap& map, const VectorXd& b, int count, Rng& rng,
                         const FiberOptions& opts, const std::vector<VectorXd>& extra_starts) {
    const Submanifold fib = fiber_submanifold(map, b);
    const AmbientMap& sys = fib.whole->constraints();

    FiberSample fs;
    fs.target = b;
    const int cod_dim = map.map.codomain->dim();

    std::vector<VectorXd> found;
    auto try_start = [&](VectorXd x) {
        if (!newton_solve(sys, x, opts.newton_max_iter, opts.residual_tol)) return;
        VectorXd img;
        try {
            img = map.eval(x);
        } catch (const Error&) {
            return;
        }
        if ((img - b).norm() > 10.0 * opts.residual_tol) return;
        for (const VectorXd& p : found)
            if ((p - x).norm() < opts.dedup_tol) return;
        found.push_back(x);
    };

    for (const VectorXd& s : extra_starts) {
        if (static_cast<int>(found.size()) >= count) break;
        try_start(s);
    }
    int attempts = 0;
    const int max_attempts = 20 * count + 200;
    while (static_cast<int>(found.size()) < count && attempts++ < max_attempts)
        try_start(map.sample_domain(rng));

    if (found.empty()) throw EmptyFiberError(map.name + ": no fiber point found over target");

    fs.points = found;
    for (const VectorXd& x : fs.points) {
        try {
            const PointFrame f = fib.whole->frame(x);
            fs.frames.push_back(f.tangent_basis);
            Eigen::JacobiSVD<MatrixXd> svd(f.J);
            fs.frame_condition.push_back(svd.singularValues()[0] / f.sigma_min);
            // Post-hoc regularity of the map itself at this point.
            if (map.map.rank(x) < cod_dim) fs.singular_flag = true;
        } catch (const SingularPointError&) {
            fs.frames.push_back(MatrixXd::Zero(x.size(), 0));
            fs.frame_condition.push_back(std::numeric_limits<double>::infinity());
            fs.singular_flag = true;
        }
    }
    fs.component = label_components(fs.points, opts.mesh_factor, &fs.n_components);
    return fs;
}

SingularScan singular_value_scan(const ZooMap& map, int samples, Rng& rng,
                                 double deficiency_tol,
                                 const std::vector<VectorXd>& extra_points) {
    SingularScan scan;
    const int cod_dim = map.map.codomain->dim();
    scan.regular_rank = cod_dim;
    const int total = samples + static_cast<int>(extra_points.size());
    for (int i = 0; i < total; ++i) {
        const VectorXd x =
            i < samples ? map.sample_domain(rng) : extra_points[i - samples];
        SingularScanEntry e;
        e.point = x;
        try {
            e.image = map.eval(x);
            const VectorXd s = map.map.singular_values(x);
            e.sigma_min = s[cod_dim - 1];
            int r = 0;
            for (int j = 0; j < s.size(); ++j)
                if (s[j] > deficiency_tol) ++r;
            e.rank = std::min(r, cod_dim);
        } catch (const Error&) {
            // On the singular locus of the formula itself (kervaire); skip.
            continue;
        }
        if (e.sigma_min < deficiency_tol) scan.deficient.push_back(e);
        scan.all.push_back(e);
    }
    return scan;
}

FiberSample kervaire_fiber(int n, const VectorXd& z, double lambda, int grid, Rng& rng) {
    if (!(lambda >= -1.0 && lambda < 0.0))
        throw DomainError("kervaire_fiber: lambda must lie in [-1, 0); lambda = 0 is the "
                          "singular locus");
    const int half = 2 * n + 1;
    if (z.size() != half) throw DomainError("kervaire_fiber: target dimension mismatch");
    const ZooMap map = zoo_kervaire(n);

    FiberSample fs;
    fs.target = z;
    const double s = std::sqrt(std::max(0.0, 1.0 - lambda * lambda));
    const bool validate = lambda > -1.0 + 1e-9;
    for (int i = 0; i < grid; ++i) {
        const VectorXd u = rng.unit_vector(half);
        VectorXd p(2 * half);
        p.head(half) = s * (z - 2.0 * u.dot(z) * u);  // tau(u)^{-1} = tau(u)
        p.tail(half) = lambda * u;
        if (validate && (map.eval(p) - z).norm() > 1e-8)
            throw DomainError("kervaire_fiber: fiber formula validation failed");
        fs.points.push_back(p);
    }
    if (validate) {
        const Submanifold fib = fiber_submanifold(map, z);
        for (const VectorXd& p : fs.points) {
            const PointFrame f = fib.whole->frame(p);
            fs.frames.push_back(f.tangent_basis);
            Eigen::JacobiSVD<MatrixXd> svd(f.J);
            fs.frame_condition.push_back(svd.singularValues()[0] / f.sigma_min);
        }
    } else {
        fs.singular_flag = true;
    }
    FiberOptions opts;
    fs.component = label_components(fs.points, opts.mesh_factor, &fs.n_components);
    return fs;
}

// ----- bundles -----

namespace {

std::vector<std::function<VectorXd(const VectorXd&)>> right_action_generators(int offset,
                                                                              int total_dim) {
    // Right quaternion multiplication by i, j, k on the 8 coordinates at
    // `offset`; zero elsewhere.
    std::vector<std::function<VectorXd(const VectorXd&)>> gens;
    const Quaternion units[3] = {Quaternion::unit_i(), Quaternion::unit_j(),
                                 Quaternion::unit_k()};
    for (const Quaternion& e : units) {
        const Matrix4d R = right_mul(e);
        gens.push_back([R, offset, total_dim](const VectorXd& p) {
            VectorXd v = VectorXd::Zero(total_dim);
            v.segment(offset, 4) = R * p.segment(offset, 4);
            v.segment(offset + 4, 4) = R * p.segment(offset + 4, 4);
            return v;
        });
    }
    return gens;
}

}  // namespace

SubmersionBundle hopf_bundle() {
    SubmersionBundle B;
    B.name = "hopf";
    B.total = sphere(8);
    B.base = sphere(5, 0.5, true, "S^4(1/2)");
    B.projection = SmoothMap{B.total, B.base, scale_map(0.5, hopf_map())};
    B.vertical_gen = right_action_generators(0, 8);
    B.fiber_metric = MatrixXd::Identity(3, 3);
    return B;
}

SubmersionBundle trivial_bundle() {
    SubmersionBundle B;
    B.name = "trivial";
    const ManifoldPtr s2 = sphere(3);
    const ManifoldPtr s3 = sphere(4);
    B.total = product(s2, s3, "S^2xS^3");
    B.base = s2;
    B.projection = SmoothMap{B.total, B.base, slice_map(7, 0, 3)};
    const Quaternion units[3] = {Quaternion::unit_i(), Quaternion::unit_j(),
                                 Quaternion::unit_k()};
    for (const Quaternion& e : units) {
        const Matrix4d R = right_mul(e);
        B.vertical_gen.push_back([R](const VectorXd& p) {
            VectorXd v = VectorXd::Zero(7);
            v.tail(4) = R * p.tail(4);
            return v;
        });
    }
    B.fiber_metric = MatrixXd::Identity(3, 3);
    return B;
}

namespace {

PullbackBundle make_pullback_bundle(const std::string& name, const ManifoldPtr& M,
                                    const AmbientMap& f) {
    PullbackBundle pb;
    pb.domain = M;
    pb.f = f;
    pb.f_map = SmoothMap{M, sphere(5), f};

    SubmersionBundle B;
    B.name = name;
    B.total = pullback_total(name, M, f);
    B.base = graph_space(name + "-graph", M, scale_map(0.5, f));

    const int nm = M->ambient_dim();
    AmbientMap proj;
    proj.in_dim = nm + 8;
    proj.out_dim = nm + 5;
    const AmbientMap fh = scale_map(0.5, f);
    proj.value = [nm, fh](const VectorXd& x) {
        VectorXd out(nm + 5);
        out.head(nm) = x.head(nm);
        out.tail(5) = fh.value(x.head(nm));
        return out;
    };
    proj.jac = [nm, fh](const VectorXd& x) {
        MatrixXd J = MatrixXd::Zero(nm + 5, nm + 8);
        J.topLeftCorner(nm, nm).setIdentity();
        J.block(nm, 0, 5, nm) = fh.jacobian(x.head(nm));
        return J;
    };
    B.projection = SmoothMap{B.total, B.base, proj};
    B.vertical_gen = right_action_generators(nm, nm + 8);
    B.fiber_metric = MatrixXd::Identity(3, 3);
    pb.bundle = std::move(B);
    return pb;
}

}  // namespace

VectorXd PullbackBundle::lift_point(const VectorXd& m, const Quaternion& q) const {
    const VectorXd p = hopf_fiber_point(f.value(m), q);
    VectorXd x(m.size() + 8);
    x.head(m.size()) = m;
    x.tail(8) = p;
    return bundle.total->retract(x);
}

MatrixXd PullbackBundle::ker_df(const VectorXd& m) const {
    const MatrixXd T = domain->tangent_basis(m);
    const MatrixXd D = f_map.differential(m);
    Eigen::JacobiSVD<MatrixXd> svd(D, Eigen::ComputeFullV);
    const VectorXd s = svd.singularValues();
    const double thr = 1e-8 * std::max(1.0, s.size() ? s[0] : 0.0);
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s[i] > thr) ++rank;
    return T * svd.matrixV().rightCols(T.cols() - rank);
}

VectorXd PullbackBundle::horizontal_lift_from_domain(const VectorXd& p, const VectorXd& v) const {
    const int nm = domain->ambient_dim();
    VectorXd vg(nm + 5);
    vg.head(nm) = v;
    vg.tail(5) = 0.5 * f.jacobian(p.head(nm)) * v;
    return bundle.horizontal_lift(p, vg);
}

VectorXd PullbackBundle::random_total_point(Rng& rng) const {
    const VectorXd m = domain->retract(rng.unit_vector(domain->ambient_dim()));
    return lift_point(m, rng.unit_quaternion());
}

PullbackBundle sp2_bundle() {
    return make_pullback_bundle("sp2-pullback", sphere(8), scale_map(-1.0, hopf_map()));
}

PullbackBundle rigas_bundle(int k) {
    return make_pullback_bundle("rigas-" + std::to_string(k), sphere(8),
                                compose(suspension_power_map(k), hopf_map()));
}

PullbackBundle cayley_bundle(int n) {
    return make_pullback_bundle("cayley-" + std::to_string(n), sphere(8),
                                compose(scale_map(-1.0, hopf_map()), cayley_power_map(n)));
}

PullbackBundle susp8_bundle() {
    return make_pullback_bundle("susp8", sphere(9),
                                compose(scale_map(-1.0, hopf_map()), susp8_phi_map()));
}

VectorXd wilhelm_random_point(int m, Rng& rng) {
    // Build the chain in closed form: u1 free on the first condition via a
    // Hopf-fiber point, then continue with the dual-map condition.
    const AmbientMap h = hopf_map();
    const AmbientMap ht = dual_hopf_map();
    std::vector<VectorXd> u(m);
    u[m - 1] = rng.unit_vector(8);
    // h(u1) = -h(u2): choose u2 last? Conditions couple forward; build from
    // the back: given u_{i+1}, pick u_i with h~(u_i) = -h(u_{i+1}) for i >= 2,
    // and u_1 with h(u_1) = -h(u_2).
    for (int i = m - 2; i >= 0; --i) {
        const VectorXd target = -h.value(u[i + 1]);
        if (i >= 1) {
            // h~(a,b) = h(conj(a), conj(b)), so a dual-fiber point is the
            // componentwise conjugate of a Hopf-fiber point.
            const VectorXd p = hopf_fiber_point(target, rng.unit_quaternion());
            VectorXd ui(8);
            ui.head(4) = pullcurv::to_vec(to_quat(p.head(4)).conj());
            ui.tail(4) = pullcurv::to_vec(to_quat(p.tail(4)).conj());
            u[i] = ui;
        } else {
            u[i] = hopf_fiber_point(target, rng.unit_quaternion());
        }
    }
    VectorXd x(8 * m);
    for (int i = 0; i < m; ++i) x.segment(8 * i, 8) = u[i];
    return wilhelm_manifold(m)->retract(x);
}

std::string fiber_sample_csv(const FiberSample& fs) {
    std::ostringstream os;
    os.precision(17);
    const int n = fs.points.empty() ? 0 : static_cast<int>(fs.points[0].size());
    os << "component,frame_condition";
    for (int j = 0; j < n; ++j) os << ",x" << j;
    os << "\n";
    for (std::size_t i = 0; i < fs.points.size(); ++i) {
        os << fs.component[i] << ","
           << (i < fs.frame_condition.size() ? fs.frame_condition[i] : 0.0);
        for (int j = 0; j < n; ++j) os << "," << fs.points[i][j];
        os << "\n";
    }
    return os.str();
}

}  // namespace pullcurv::zoo
