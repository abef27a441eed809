#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "pullcurv/embedding.hpp"
#include "pullcurv/errors.hpp"
#include "pullcurv/mapzoo.hpp"
#include "pullcurv/spaces.hpp"

using namespace pullcurv;
using namespace pullcurv::zoo;

TEST_CASE("hopf_fiber_point lands on the requested fiber") {
    Rng rng(501);
    const AmbientMap h = spaces::hopf_map();
    for (int i = 0; i < 50; ++i) {
        const VectorXd b = rng.unit_vector(5);
        const VectorXd p = hopf_fiber_point(b, rng.unit_quaternion());
        CHECK(std::abs(p.norm() - 1.0) < 1e-12);
        CHECK((h.value(p) - b).norm() < 1e-12);
    }
    VectorXd south(5);
    south << -1, 0, 0, 0, 0;
    CHECK((h.value(hopf_fiber_point(south, Quaternion::identity())) - south).norm() < 1e-12);
}

TEST_CASE("cayley map sends 1 to the south pole") {
    const ZooMap z = zoo_cayley(3);
    VectorXd one = VectorXd::Zero(8);
    one[0] = 1.0;
    const VectorXd img = z.eval(one);
    CHECK(img[0] == doctest::Approx(-1.0));
    CHECK(img.tail(4).norm() < 1e-12);
}

TEST_CASE("sp2 fiber is a single Hopf orbit") {
    const ZooMap z = zoo_sp2();
    Rng rng(503);
    const VectorXd m0 = rng.unit_vector(8);
    const VectorXd b = z.eval(m0);
    const FiberSample fs = fiber_sample(z, b, 120, rng);
    CHECK(!fs.singular_flag);
    CHECK(fs.n_components == 1);
    CHECK(static_cast<int>(fs.points.size()) >= 100);

    // Orbit oracle: every sampled point is (a0 q, b0 q) for some unit q.
    const Quaternion a0 = to_quat(m0.head(4)), b0 = to_quat(m0.tail(4));
    for (const VectorXd& x : fs.points) {
        CHECK((z.eval(x) - b).norm() < 1e-9);
        const Quaternion a = to_quat(x.head(4)), bq = to_quat(x.tail(4));
        const Quaternion q = a0.conj() * a + b0.conj() * bq;  // unit when on the orbit
        CHECK((to_vec(a0 * q) - x.head(4)).norm() < 1e-8);
        CHECK((to_vec(b0 * q) - x.tail(4)).norm() < 1e-8);
        CHECK(std::abs(q.norm() - 1.0) < 1e-8);
    }
    for (const MatrixXd& T : fs.frames) CHECK(T.cols() == 3);
}

TEST_CASE("rigas k=2 regular fibers have 2 components of Hopf fibers") {
    const ZooMap z = zoo_rigas(2);
    Rng rng(509);
    VectorXd b(5);
    b << 0.2, 0.5, 0.4, 0.3, std::sqrt(1.0 - 0.04 - 0.25 - 0.16 - 0.09);
    const FiberSample fs = fiber_sample(z, b, 160, rng);
    CHECK(!fs.singular_flag);
    CHECK(fs.n_components == 2);
    for (const MatrixXd& T : fs.frames) CHECK(T.cols() == 3);
}

TEST_CASE("cayley n=2 fibers: 2 components, each inside one belt") {
    const ZooMap z = zoo_cayley(2);
    Rng rng(521);
    VectorXd b(5);
    b << -0.3, 0.7, 0.2, -0.4, std::sqrt(1.0 - 0.09 - 0.49 - 0.04 - 0.16);
    const FiberSample fs = fiber_sample(z, b, 160, rng);
    CHECK(!fs.singular_flag);
    CHECK(fs.n_components == 2);
    for (const MatrixXd& T : fs.frames) CHECK(T.cols() == 3);

    std::vector<double> tmin(fs.n_components, 10.0), tmax(fs.n_components, -10.0);
    for (std::size_t i = 0; i < fs.points.size(); ++i) {
        const double t = s7_angle(fs.points[i]);
        tmin[fs.component[i]] = std::min(tmin[fs.component[i]], t);
        tmax[fs.component[i]] = std::max(tmax[fs.component[i]], t);
    }
    for (int c = 0; c < fs.n_components; ++c) {
        const int belt_lo = static_cast<int>(std::floor(tmin[c] / (M_PI / 2)));
        const int belt_hi = static_cast<int>(std::floor(tmax[c] / (M_PI / 2)));
        CHECK(belt_lo == belt_hi);  // one belt per component
    }
}

TEST_CASE("fiber residuals and frames satisfy the advertised tolerances") {
    const ZooMap z = zoo_cayley(2);
    Rng rng(523);
    VectorXd b(5);
    b << -0.5, 0.6, 0.1, 0.3, std::sqrt(1.0 - 0.25 - 0.36 - 0.01 - 0.09);
    const FiberSample fs = fiber_sample(z, b, 60, rng);
    for (std::size_t i = 0; i < fs.points.size(); ++i) {
        CHECK((z.eval(fs.points[i]) - b).norm() < 1e-9);
        // Frames annihilate dF.
        const MatrixXd J = z.map.jacobian(fs.points[i]);
        CHECK((J * fs.frames[i]).lpNorm<Eigen::Infinity>() < 1e-8);
    }
}

TEST_CASE("singular value scans") {
    Rng rng(541);
    SUBCASE("cayley: deficient images cluster at the south pole only") {
        const ZooMap z = zoo_cayley(2);
        const SingularScan scan = singular_value_scan(z, 1500, rng);
        CHECK(!scan.deficient.empty());
        VectorXd pole(5);
        pole << -1, 0, 0, 0, 0;
        for (const auto& e : scan.deficient) CHECK((e.image - pole).norm() < 0.1);
        int regular = 0;
        for (const auto& e : scan.all)
            if (e.rank == 4) ++regular;
        CHECK(regular > static_cast<int>(scan.all.size()) * 9 / 10);
    }
    SUBCASE("susp8: rank 4 generically, pole cluster from near-stratum points") {
        const ZooMap z = zoo_susp8();
        std::vector<VectorXd> extras;
        for (int i = 0; i < 60; ++i) {
            VectorXd x(9);
            x.head(4) = rng.unit_vector(4);
            const double eps = rng.uniform(1e-4, 0.02);
            x[4] = eps * rng.gaussian();
            x.tail(4) = eps * rng.gaussian_vector(4);
            x /= x.norm();
            extras.push_back(x);
        }
        const SingularScan scan = singular_value_scan(z, 400, rng, 0.05, extras);
        CHECK(!scan.deficient.empty());
        VectorXd pole(5);
        pole << -1, 0, 0, 0, 0;
        for (const auto& e : scan.deficient) CHECK((e.image - pole).norm() < 0.1);
        int regular = 0;
        for (const auto& e : scan.all)
            if (e.rank == 4) ++regular;
        CHECK(regular >= 400);  // every random sample is regular
    }
    SUBCASE("rigas k=2: deficient images on the poles and the real-part arc") {
        const ZooMap z = zoo_rigas(2);
        const SingularScan scan = singular_value_scan(z, 1500, rng);
        CHECK(!scan.deficient.empty());
        for (const auto& e : scan.deficient)
            CHECK(e.image.tail(3).norm() < 0.1);  // quaternion part nearly real
    }
}

TEST_CASE("wilhelm space: membership, map rank 4, fiber dimension 6") {
    Rng rng(547);
    const ZooMap z = zoo_wilhelm(2);
    for (int i = 0; i < 10; ++i) {
        const VectorXd x = wilhelm_random_point(2, rng);
        CHECK(z.map.domain->constraint_residual(x).lpNorm<Eigen::Infinity>() < 1e-10);
        CHECK(z.map.rank(x) == 4);
    }
    const VectorXd x0 = wilhelm_random_point(2, rng);
    const Submanifold fib = fiber_submanifold(z, z.eval(x0));
    CHECK(fib.dim() == 6);
    CHECK(fib.whole->frame(x0).tangent_basis.cols() == 6);

    // Sp(2,2) points correspond to Sp(2) column pairs.
    const Sp2Element A = sp2_random(rng);
    VectorXd y(16);
    y.head(8) << to_vec(A.c), to_vec(A.d);  // u1 = second column
    y.tail(8) << to_vec(A.a), to_vec(A.b);  // u2 = first column
    CHECK(z.map.domain->constraint_residual(y).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("wilhelm m=3 points satisfy the chain constraints") {
    Rng rng(557);
    const auto W3 = spaces::wilhelm_manifold(3);
    for (int i = 0; i < 5; ++i) {
        const VectorXd x = wilhelm_random_point(3, rng);
        CHECK(W3->constraint_residual(x).lpNorm<Eigen::Infinity>() < 1e-10);
        CHECK_NOTHROW(W3->frame(x));
    }
}

TEST_CASE("kervaire fibers") {
    Rng rng(563);
    const int n = 1;
    const VectorXd zt = rng.unit_vector(3);

    SUBCASE("points satisfy the fiber equation and frames have dim 2n+1 = 3") {
        const FiberSample fs = kervaire_fiber(n, zt, -0.5, 40, rng);
        CHECK(!fs.singular_flag);
        CHECK(fs.points.size() == 40);
        for (const MatrixXd& T : fs.frames) CHECK(T.cols() == 3);
    }
    SUBCASE("lambda = 0 is rejected as the singular locus") {
        CHECK_THROWS_AS(kervaire_fiber(n, zt, 0.0, 4, rng), DomainError);
    }
    SUBCASE("the limit lambda -> -1 evaluates consistently") {
        const FiberSample fs = kervaire_fiber(n, zt, -1.0 + 1e-6, 20, rng);
        const ZooMap z = zoo_kervaire(n);
        for (const VectorXd& p : fs.points) CHECK((z.eval(p) - zt).norm() < 1e-5);
        // The x-part collapses toward the origin sphere.
        for (const VectorXd& p : fs.points) CHECK(p.head(3).norm() < 2e-3);
    }
}

TEST_CASE("fiber CSV export has one row per point") {
    Rng rng(569);
    const ZooMap z = zoo_sp2();
    const VectorXd b = z.eval(rng.unit_vector(8));
    const FiberSample fs = fiber_sample(z, b, 25, rng);
    const std::string csv = fiber_sample_csv(fs);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(fs.points.size()) + 1);
    CHECK(csv.rfind("component,frame_condition", 0) == 0);
}
