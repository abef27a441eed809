#include <benchmark/benchmark.h>

#include "pullcurv/embedding.hpp"
#include "pullcurv/mapzoo.hpp"
#include "pullcurv/octonion.hpp"
#include "pullcurv/quaternion.hpp"
#include "pullcurv/rng.hpp"
#include "pullcurv/spaces.hpp"

using namespace pullcurv;

static void BM_QuaternionProduct(benchmark::State& state) {
    Rng rng(1);
    const Quaternion p = rng.unit_quaternion(), q = rng.unit_quaternion();
    for (auto _ : state) benchmark::DoNotOptimize(p * q);
}
BENCHMARK(BM_QuaternionProduct);

static void BM_OctonionProduct(benchmark::State& state) {
    Rng rng(2);
    const Octonion p = to_oct(rng.unit_vector(8)), q = to_oct(rng.unit_vector(8));
    for (auto _ : state) benchmark::DoNotOptimize(p * q);
}
BENCHMARK(BM_OctonionProduct);

static void BM_SecondFundamentalFormSp2(benchmark::State& state) {
    Rng rng(3);
    const auto M = spaces::sp2_manifold();
    const VectorXd x = zoo::sp2_random(rng).to_vec();
    const VectorXd u = M->project_tangent(x, rng.gaussian_vector(16));
    const VectorXd v = M->project_tangent(x, rng.gaussian_vector(16));
    for (auto _ : state) benchmark::DoNotOptimize(M->second_fundamental_form(x, u, v));
}
BENCHMARK(BM_SecondFundamentalFormSp2);

static void BM_SectionalCurvatureS7(benchmark::State& state) {
    Rng rng(4);
    const auto S = spaces::sphere(8);
    const VectorXd x = rng.unit_vector(8);
    const VectorXd u = S->project_tangent(x, rng.gaussian_vector(8));
    const VectorXd v = S->project_tangent(x, rng.gaussian_vector(8));
    for (auto _ : state) benchmark::DoNotOptimize(S->sectional_curvature(x, u, v));
}
BENCHMARK(BM_SectionalCurvatureS7);

static void BM_ATensorHopf(benchmark::State& state) {
    Rng rng(5);
    const SubmersionBundle B = zoo::hopf_bundle();
    const VectorXd p = rng.unit_vector(8);
    VectorXd X = B.horizontal_project(p, rng.gaussian_vector(8));
    X /= X.norm();
    VectorXd Y = B.horizontal_project(p, rng.gaussian_vector(8));
    Y /= Y.norm();
    for (auto _ : state) benchmark::DoNotOptimize(B.a_tensor(p, X, Y));
}
BENCHMARK(BM_ATensorHopf);

static void BM_AFlatKernelSp2(benchmark::State& state) {
    Rng rng(6);
    const zoo::PullbackBundle pb = zoo::sp2_bundle();
    const VectorXd p = pb.random_total_point(rng);
    for (auto _ : state) benchmark::DoNotOptimize(pb.bundle.a_flat_kernel(p));
}
BENCHMARK(BM_AFlatKernelSp2);

static void BM_FiberNewtonCayley(benchmark::State& state) {
    Rng rng(7);
    const zoo::ZooMap z = zoo::zoo_cayley(2);
    VectorXd b(5);
    b << -0.3, 0.7, 0.2, -0.4, std::sqrt(1.0 - 0.09 - 0.49 - 0.04 - 0.16);
    for (auto _ : state) {
        Rng r = rng.fork(state.iterations());
        benchmark::DoNotOptimize(zoo::fiber_sample(z, b, 8, r));
    }
}
BENCHMARK(BM_FiberNewtonCayley);

static void BM_GeodesicStepSp2(benchmark::State& state) {
    Rng rng(8);
    const auto M = spaces::sp2_manifold();
    const VectorXd x = zoo::sp2_random(rng).to_vec();
    VectorXd v = M->project_tangent(x, rng.gaussian_vector(16));
    v /= v.norm();
    for (auto _ : state) benchmark::DoNotOptimize(M->geodesic({x, v, 0.0}, 0.01, 1e-3));
}
BENCHMARK(BM_GeodesicStepSp2);

BENCHMARK_MAIN();
