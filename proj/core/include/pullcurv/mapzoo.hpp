#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pullcurv/manifold.hpp"
#include "pullcurv/quaternion.hpp"
#include "pullcurv/rng.hpp"
#include "pullcurv/smooth_map.hpp"
#include "pullcurv/submanifold.hpp"
#include "pullcurv/submersion.hpp"

namespace pullcurv::zoo {

// ----- Sp(2) elements -----

struct Sp2Element {
    Quaternion a, b;  // first column
    Quaternion c, d;  // second column

    VectorXd to_vec() const;
    static Sp2Element from_vec(const VectorXd& x);

    // Max violation of unit columns and quaternionic orthogonality.
    double membership_residual() const;
};

// Gaussian columns + quaternionic Gram-Schmidt; resamples degenerate draws.
Sp2Element sp2_random(Rng& rng);

// A point of the Hopf fiber over b (unit vector in R^5), rotated by q.
VectorXd hopf_fiber_point(const VectorXd& b, const Quaternion& q);

// Polar angle t of a point of S^7 viewed as a unit octonion.
double s7_angle(const VectorXd& x);

// Point (cos t + sin t p, sin t w) of S^7; p purely imaginary, |p|^2+|w|^2=1.
VectorXd s7_from_angle(double t, const Quaternion& p, const Quaternion& w);

// ----- the example maps -----

struct ZooMap {
    std::string name;
    int param = 0;
    SmoothMap map;
    std::function<VectorXd(Rng&)> sample_domain;

    VectorXd eval(const VectorXd& x) const { return map.eval(x); }
};

ZooMap zoo_sp2();             // a.h       : S^7 -> S^4
ZooMap zoo_wilhelm(int m);    // h~ . pr_m : Sp(2,m) -> S^4
ZooMap zoo_rigas(int k);      // phi_k . h : S^7 -> S^4
ZooMap zoo_cayley(int n);     // a.h.phi_n : S^7 -> S^4
ZooMap zoo_susp8();           // a.h.phi   : S^8 -> S^4
ZooMap zoo_kervaire(int n);   // Jtau      : S^{4n+1} -> S^{2n}

// Dispatch by name ("sp2", "wilhelm", "rigas", "cayley", "susp8", "kervaire").
ZooMap make_zoo_map(const std::string& name, int param);

// Closed-form first coordinate of the cayley map on (t, w): 2 sin^2(nt)|w|^2 - 1.
double cayley_first_coordinate(int n, double t, const Quaternion& w);

// ----- fiber machinery -----

struct FiberSample {
    VectorXd target;
    std::vector<VectorXd> points;
    std::vector<MatrixXd> frames;           // orthonormal fiber-tangent frames
    std::vector<double> frame_condition;    // cond. of kept constraint spectrum
    std::vector<int> component;
    int n_components = 0;
    bool singular_flag = false;             // some point failed the rank check
};

struct FiberOptions {
    int newton_max_iter = 60;
    double residual_tol = 1e-10;
    double dedup_tol = 1e-7;
    double mesh_factor = 3.0;  // component linking: factor x median NN distance
};

// The fiber F^{-1}(b) as a submanifold of the domain, via a stereographic
// chart of the codomain centered at b.
Submanifold fiber_submanifold(const ZooMap& map, const VectorXd& b);

// Multistart Newton sampling of the fiber over b. Extra starting points may
// be supplied (e.g. the previous fiber of a continuation family).
FiberSample fiber_sample(const ZooMap& map, const VectorXd& b, int count, Rng& rng,
                         const FiberOptions& opts = {},
                         const std::vector<VectorXd>& extra_starts = {});

// ----- singular value scans -----

struct SingularScanEntry {
    VectorXd point;
    VectorXd image;
    int rank = 0;
    double sigma_min = 0.0;
};

struct SingularScan {
    std::vector<SingularScanEntry> all;
    std::vector<SingularScanEntry> deficient;  // sigma_min below the threshold
    int regular_rank = 0;
};

// Rank of dF over random domain samples (plus optional targeted extras);
// `deficiency_tol` is the absolute smallest-singular-value threshold below
// which a point is flagged.
SingularScan singular_value_scan(const ZooMap& map, int samples, Rng& rng,
                                 double deficiency_tol = 0.05,
                                 const std::vector<VectorXd>& extra_points = {});

// ----- Kervaire fibers -----

// Parametrized fiber {(sqrt(1-l^2) tau(u) z, l u)} over z for a fixed l in
// [-1, 0); validated through the map where it is defined.
FiberSample kervaire_fiber(int n, const VectorXd& z, double lambda, int grid, Rng& rng);

// ----- bundles -----

// Hopf bundle S^3 ... S^7 -> S^4(1/2) with the round metrics.
SubmersionBundle hopf_bundle();

// Trivial bundle S^2 x S^3 -> S^2 with the product metric.
SubmersionBundle trivial_bundle();

// Pullback of the Hopf bundle by f : M -> S^4 with the pullback metric; the
// base carries the graph-metric model (M embedded via m -> (m, f(m)/2)).
struct PullbackBundle {
    SubmersionBundle bundle;
    ManifoldPtr domain;  // round model of M
    AmbientMap f;        // into the unit S^4
    SmoothMap f_map;     // f as a map of manifolds

    // Total-space point over m (fiber position q).
    VectorXd lift_point(const VectorXd& m, const Quaternion& q) const;
    // Orthonormal basis of ker df_m inside T_m M.
    MatrixXd ker_df(const VectorXd& m) const;
    // Horizontal lift at p of a domain tangent vector (graph model handled).
    VectorXd horizontal_lift_from_domain(const VectorXd& p, const VectorXd& v) const;
    // Random total-space point.
    VectorXd random_total_point(Rng& rng) const;
};

PullbackBundle sp2_bundle();
PullbackBundle rigas_bundle(int k);
PullbackBundle cayley_bundle(int n);
PullbackBundle susp8_bundle();

// Wilhelm spaces: closed-form random points of Sp(2,m).
VectorXd wilhelm_random_point(int m, Rng& rng);

// Write a fiber sample as CSV (one row per point).
std::string fiber_sample_csv(const FiberSample& fs);

}  // namespace pullcurv::zoo
