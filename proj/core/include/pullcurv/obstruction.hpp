#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pullcurv/manifold.hpp"
#include "pullcurv/mapzoo.hpp"
#include "pullcurv/rng.hpp"
#include "pullcurv/submanifold.hpp"
#include "pullcurv/submersion.hpp"

namespace pullcurv::obs {

enum class Verdict { pass, fail, indeterminate };
const char* to_string(Verdict v);

struct VerdictThresholds {
    double pass_tol = 1e-4;
    double fail_floor = 1e-2;
};

// Two-measure totally-geodesic verdict: pointwise |II| and geodesic drift
// off the level set, both in units of |II| for unit tangent pairs.
struct GeodesyVerdict {
    std::string fiber_id;
    double max_ii = 0.0;
    double max_drift_raw = 0.0;     // max |F(gamma(t)) - b|
    double drift_scaled = 0.0;      // converted to |II| units
    int points_used = 0;
    int pairs_per_point = 0;
    VerdictThresholds thresholds;
    Verdict verdict_ii = Verdict::indeterminate;
    Verdict verdict_drift = Verdict::indeterminate;
    Verdict verdict = Verdict::indeterminate;
    bool measures_agree = false;
    std::string note;
};

struct TotallyGeodesicOptions {
    int max_points = 40;        // points used for II pairs
    int pairs_per_point = 20;
    int geodesic_starts = 6;
    double geodesic_T = 0.5;
    double geodesic_dt = 2e-3;
    VerdictThresholds thresholds;
};

// S inside its parent, sampled at `points`; F is a level map vanishing-set
// description of S used for the drift measure (target value b).
GeodesyVerdict totally_geodesic_submanifold_test(const Submanifold& S,
                                                 const std::vector<VectorXd>& points,
                                                 const AmbientMap& F, const VectorXd& b,
                                                 Rng& rng, const TotallyGeodesicOptions& opts,
                                                 const std::string& fiber_id);

// Convenience wrapper for a sampled zoo fiber.
GeodesyVerdict totally_geodesic_test(const zoo::ZooMap& map, const VectorXd& b,
                                     const zoo::FiberSample& fiber, Rng& rng,
                                     const TotallyGeodesicOptions& opts);

// The same verdict measured in the graph metric: M is embedded as
// m -> (m, f(m)/2) and the fiber (cut out on the m-block by `extra_on_M`)
// is tested inside that graph.
GeodesyVerdict totally_geodesic_graph_test(const ManifoldPtr& M, const AmbientMap& f_unit,
                                           const AmbientMap& extra_on_M, int fiber_dim,
                                           const std::vector<VectorXd>& points_in_M, Rng& rng,
                                           const TotallyGeodesicOptions& opts,
                                           const std::string& fiber_id);

// ----- fiber degeneration (exotic 7-spheres) -----

// Per-theta statistics of the fiber component in the north polar cap
// t in [0, pi/n]. Two views are recorded: the full cap component, whose
// |b| does NOT shrink (the fiber leans on the cap edge where eta -> 0),
// and the interior collar t in [0, pi/(2n)], where eta is bounded below by
// eta(pi/(2n)) > 0 and the shrinkage bound max|b|^2 <= (1+cos theta)/min eta
// genuinely bites.
struct DegenerationRow {
    double theta = 0.0;
    double cos_theta = 0.0;
    int cap_points = 0;
    double max_abs_b = 0.0;   // full cap component
    double max_b_sq = 0.0;
    double eta_min_observed = 0.0;  // min of eta(t) over the cap sample
    double bound = 0.0;             // (1 + cos theta) / eta_min_observed
    double identity_residual = 0.0; // max |eta(t)|b|^2 - (1+cos theta)|
    int interior_points = 0;        // t in [0, pi/(2n)]
    double interior_max_b_sq = 0.0;
    double interior_bound = 0.0;    // (1 + cos theta) / min eta on [0, pi/(2n)]
    double t_min = 0.0, t_max = 0.0;
    double diameter = 0.0;
    double min_dist_singular = 0.0;
};

struct DegenerationTrace {
    int n = 0;
    double eta_min_interior = 0.0;  // min of eta over [0, pi/(2n)], golden section
    std::vector<DegenerationRow> rows;
    bool bound_ok = false;           // full-cap observed bound at every theta
    bool interior_bound_ok = false;  // interior closed-form bound at every theta
    bool interior_monotone_ok = false;
    double final_interior_max_b_sq = 0.0;
    double final_max_b_sq = 0.0;  // full cap; does not shrink for n >= 2
};

DegenerationTrace degeneration_trace(int n, double theta_start, double theta_end, int steps,
                                     int fiber_count, Rng& rng);

// eta(t) = 2 sin^2(nt) / sin^2(t), continuously extended by 2 n^2 at 0.
double degeneration_eta(int n, double t);

// Minimum of eta over [0, pi/(2n)] by golden-section search.
double degeneration_eta_min_interior(int n);

std::string degeneration_trace_csv(const DegenerationTrace& t);

// ----- radial projection / stability -----

struct ImmersionReport {
    int dim_fiber = 0;
    int dim_target = 0;
    bool structural_obstruction = false;  // dim_fiber > dim_target
    double max_tube_distance = 0.0;
    double min_singular = 0.0;
    std::vector<int> rank_profile;
    bool immersion = false;
    std::string note;
};

// Differential of the closest-point projection onto S restricted to the
// fiber frames, by central differences warm-started at the projection.
ImmersionReport radial_projection_immersion_test(const Submanifold& S,
                                                 const std::vector<VectorXd>& fiber_points,
                                                 const std::vector<MatrixXd>& fiber_frames,
                                                 const std::vector<VectorXd>& S_starts,
                                                 double imm_tol = 1e-3);

struct StabilityProbe {
    double delta = 0.0;
    int geodesics = 0;
    double fitted_c_min = 0.0;   // min over geodesics of min_t h(t)/t^2
    double hessian_margin = 0.0; // min of d2eta(v,v) - (0.9 g(Pv,Pv) - 0.1 g(Qv,Qv))
    double pure_normal_h_residual = 0.0;  // |h(t) - t^2/2| / t^2 at small t, v normal at x in S
    bool c_ok = false;
    bool hessian_ok = false;
};

// Model case probe: S embedded in a round sphere M, geodesics shot tangent
// to the normal fibers of the radial projection.
StabilityProbe stability_bound_probe(const Submanifold& S, const std::vector<VectorXd>& S_points,
                                     double delta, int geodesic_count, Rng& rng,
                                     double hessian_tol = 1e-3);

// ----- A-flat pipeline -----

struct AFlatFieldReport {
    double max_kernel_angle = 0.0;   // numeric kernel vs ker df (radians)
    int kernel_rank = 0;
    double accel_norm = 0.0;         // |nabla_X X| (should be genuinely nonzero)
    double bracket_norm = 0.0;       // |[X, Y]|
    double accel_a_norm = 0.0;       // ||A|| at the unit covariant acceleration
    double bracket_a_norm = 0.0;     // ||A|| at the unit bracket
    bool pass = false;
};

// Verifies kernel = ker df at m0, then differentiates A-flat fields built by
// projection onto ker df: the acceleration and the bracket must be A-flat.
AFlatFieldReport a_flat_field_checks(const zoo::PullbackBundle& pb, const VectorXd& m0,
                                     Rng& rng, double tol = 1e-4);

struct LeafGeodesyReport {
    GeodesyVerdict verdict;
    double trace_level_drift = 0.0;  // |f - f(m0)| along traced leaf curves
    int traced_points = 0;
    double max_kernel_angle = 0.0;
};

// Traces the A-flat leaf through m0 (projection of shooting directions onto
// the kernel distribution) and runs the totally-geodesic test on the leaf.
LeafGeodesyReport aflat_leaf_geodesy(const zoo::PullbackBundle& pb, const VectorXd& m0,
                                     Rng& rng, const TotallyGeodesicOptions& opts);

}  // namespace pullcurv::obs
