#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "pullcurv/errors.hpp"
#include "pullcurv/mapzoo.hpp"
#include "pullcurv/spaces.hpp"

using namespace pullcurv;
using namespace pullcurv::spaces;
using pullcurv::testing::QuatMat2;

TEST_CASE("tangent projection on spheres") {
    const auto S2 = sphere(3);
    VectorXd x(3);
    x << 1, 0, 0;
    VectorXd w(3);
    w << 1, 2, 3;
    const VectorXd p = S2->project_tangent(x, w);
    CHECK(p[0] == doctest::Approx(0.0));
    CHECK(p[1] == doctest::Approx(2.0));
    CHECK(p[2] == doctest::Approx(3.0));

    Rng rng(211);
    const auto S6 = sphere(7);
    for (int i = 0; i < 20; ++i) {
        const VectorXd y = rng.unit_vector(7);
        CHECK(S6->project_tangent(y, y).norm() < 1e-12);  // radial is normal
        const VectorXd t = testing::random_tangent(*S6, y, rng);
        CHECK((S6->project_tangent(y, t) - t).norm() < 1e-12);  // idempotent
    }
}

TEST_CASE("frame throws at singular points") {
    const auto S2 = sphere(3);
    CHECK_THROWS_AS(S2->frame(VectorXd::Zero(3)), SingularPointError);
}

TEST_CASE("second fundamental form of round spheres: II(X,X) = -x") {
    Rng rng(223);
    for (int amb : {3, 5, 8}) {
        const auto S = sphere(amb);
        const VectorXd x = rng.unit_vector(amb);
        const VectorXd t = testing::random_tangent(*S, x, rng);
        CHECK((S->second_fundamental_form(x, t, t) + x).norm() < 1e-12);
    }
}

TEST_CASE("II symmetry and normality on random manifolds") {
    Rng rng(227);
    const auto M = sp2_manifold();
    for (int i = 0; i < 10; ++i) {
        const VectorXd x = zoo::sp2_random(rng).to_vec();
        const VectorXd u = testing::random_tangent(*M, x, rng);
        const VectorXd v = testing::random_tangent(*M, x, rng);
        const VectorXd iiuv = M->second_fundamental_form(x, u, v);
        const VectorXd iivu = M->second_fundamental_form(x, v, u);
        CHECK((iiuv - iivu).norm() < 1e-10);
        CHECK(M->project_tangent(x, iiuv).norm() < 1e-9 * (1.0 + iiuv.norm()));
    }
}

TEST_CASE("great subsphere is totally geodesic; latitude circle has |II| = cot(theta)") {
    const auto S3 = sphere(4);
    const Submanifold great = great_subsphere(S3, {3}, "S^2 in S^3");
    Rng rng(229);
    for (int i = 0; i < 10; ++i) {
        VectorXd x = rng.unit_vector(4);
        x[3] = 0.0;
        x /= x.norm();
        const VectorXd u = testing::random_tangent(*great.whole, x, rng);
        const VectorXd v = testing::random_tangent(*great.whole, x, rng);
        CHECK(great.second_fundamental_form_in_parent(x, u, v).norm() < 1e-12);
    }

    const auto S2 = sphere(3);
    for (double theta : {0.3, 0.7, 1.0, 1.4}) {
        const Submanifold circle = make_submanifold(
            S2, coordinate_pin_constraint(3, {2}, {std::cos(theta)}), 1, "latitude");
        VectorXd x(3);
        x << std::sin(theta), 0.0, std::cos(theta);
        VectorXd u(3);
        u << 0.0, 1.0, 0.0;  // unit tangent to the circle
        const double ii = circle.second_fundamental_form_in_parent(x, u, u).norm();
        CHECK(std::abs(ii - 1.0 / std::tan(theta)) < 1e-6);
    }
}

TEST_CASE("sectional curvature of round spheres is 1") {
    Rng rng(233);
    for (int amb : {3, 4, 5, 8}) {
        const auto S = sphere(amb);
        for (int i = 0; i < 5; ++i) {
            const VectorXd x = rng.unit_vector(amb);
            const VectorXd u = testing::random_tangent(*S, x, rng);
            const VectorXd v = testing::random_tangent(*S, x, rng);
            if (std::abs(u.dot(v)) > 0.99) continue;
            CHECK(std::abs(S->sectional_curvature(x, u, v) - 1.0) < 1e-8);
        }
    }
    // Finite-difference constraint derivatives reach the looser tolerance.
    const auto S4fd = sphere(5, 1.0, false);
    for (int i = 0; i < 3; ++i) {
        const VectorXd x = rng.unit_vector(5);
        const VectorXd u = testing::random_tangent(*S4fd, x, rng);
        const VectorXd v = testing::random_tangent(*S4fd, x, rng);
        if (std::abs(u.dot(v)) > 0.99) continue;
        CHECK(std::abs(S4fd->sectional_curvature(x, u, v) - 1.0) < 1e-5);
    }
}

TEST_CASE("mixed planes of S^3 x S^3 are flat; flat torus is flat") {
    Rng rng(239);
    const auto P = product(sphere(4), sphere(4));
    VectorXd x(8);
    x.head(4) = rng.unit_vector(4);
    x.tail(4) = rng.unit_vector(4);
    VectorXd u = VectorXd::Zero(8), v = VectorXd::Zero(8);
    u.head(4) = testing::random_tangent(*sphere(4), x.head(4), rng);
    v.tail(4) = testing::random_tangent(*sphere(4), x.tail(4), rng);
    CHECK(std::abs(P->sectional_curvature(x, u, v)) < 1e-8);

    const auto T2 = product(sphere(2), sphere(2), "T^2");
    VectorXd y(4);
    y << 1, 0, 0, 1;
    VectorXd a = VectorXd::Zero(4), b = VectorXd::Zero(4);
    a[1] = 1.0;
    b[3] = 1.0;
    CHECK(std::abs(T2->sectional_curvature(y, a, b)) < 1e-10);
}

TEST_CASE("curvature tensor symmetries and sphere identity") {
    Rng rng(241);
    const auto S = sphere(5);
    const VectorXd x = rng.unit_vector(5);
    const VectorXd X = testing::random_tangent(*S, x, rng);
    const VectorXd Y = testing::random_tangent(*S, x, rng);
    const VectorXd Z = testing::random_tangent(*S, x, rng);
    const VectorXd W = testing::random_tangent(*S, x, rng);

    const double gram = X.squaredNorm() * Y.squaredNorm() - std::pow(X.dot(Y), 2);
    CHECK(std::abs(S->curvature_apply(x, X, Y, Y).dot(X) - gram) < 1e-10);

    // Antisymmetry, pair symmetry, first Bianchi.
    const auto R = [&](const VectorXd& A, const VectorXd& B, const VectorXd& C,
                       const VectorXd& D) { return S->curvature_apply(x, A, B, C).dot(D); };
    CHECK(std::abs(R(X, Y, Z, W) + R(Y, X, Z, W)) < 1e-9);
    CHECK(std::abs(R(X, Y, Z, W) + R(X, Y, W, Z)) < 1e-9);
    CHECK(std::abs(R(X, Y, Z, W) - R(Z, W, X, Y)) < 1e-9);
    CHECK(std::abs(R(X, Y, Z, W) + R(Y, Z, X, W) + R(Z, X, Y, W)) < 1e-9);

    // Same symmetries on Sp(2).
    const auto M = sp2_manifold();
    const VectorXd m = zoo::sp2_random(rng).to_vec();
    const VectorXd A1 = testing::random_tangent(*M, m, rng);
    const VectorXd A2 = testing::random_tangent(*M, m, rng);
    const VectorXd A3 = testing::random_tangent(*M, m, rng);
    const VectorXd A4 = testing::random_tangent(*M, m, rng);
    const auto Rm = [&](const VectorXd& A, const VectorXd& B, const VectorXd& C,
                        const VectorXd& D) { return M->curvature_apply(m, A, B, C).dot(D); };
    CHECK(std::abs(Rm(A1, A2, A3, A4) + Rm(A2, A1, A3, A4)) < 1e-9);
    CHECK(std::abs(Rm(A1, A2, A3, A4) + Rm(A1, A2, A4, A3)) < 1e-9);
    CHECK(std::abs(Rm(A1, A2, A3, A4) - Rm(A3, A4, A1, A2)) < 1e-9);
    CHECK(std::abs(Rm(A1, A2, A3, A4) + Rm(A2, A3, A1, A4) + Rm(A3, A1, A2, A4)) < 1e-9);
}

TEST_CASE("Sp(2) pullback metric: sectional curvature matches the biinvariant formula") {
    Rng rng(251);
    const auto M = sp2_manifold();
    for (int i = 0; i < 8; ++i) {
        const QuatMat2 A = QuatMat2::from_vec(zoo::sp2_random(rng).to_vec());
        const QuatMat2 xi = testing::random_sp2_algebra(rng);
        const QuatMat2 zeta = testing::random_sp2_algebra(rng);
        const VectorXd X = (A * xi).to_vec();
        const VectorXd Y = (A * zeta).to_vec();
        const double gram = X.squaredNorm() * Y.squaredNorm() - std::pow(X.dot(Y), 2);
        if (gram < 1e-3) continue;
        const double expected = 0.25 * testing::commutator(xi, zeta).norm() / 1.0;
        const double k = M->sectional_curvature(A.to_vec(), X, Y);
        const double expected_k = 0.25 * std::pow(testing::commutator(xi, zeta).norm(), 2) / gram;
        (void)expected;
        CHECK(std::abs(k - expected_k) < 1e-5 * (1.0 + expected_k));
    }
}

TEST_CASE("geodesics: great circles close up and stay on subspheres") {
    const auto S2 = sphere(3);
    VectorXd x(3), v(3);
    x << 1, 0, 0;
    v << 0, 1, 0;
    const GeodesicState end = S2->geodesic({x, v, 0.0}, 2.0 * M_PI, 1e-3);
    CHECK((end.x - x).norm() < 1e-6);
    CHECK(std::abs(end.v.norm() - 1.0) < 1e-8);  // energy conservation

    // Velocity tangent to a great subsphere keeps the geodesic on it.
    const auto S6 = sphere(7);
    Rng rng(257);
    VectorXd y = rng.unit_vector(7);
    y[5] = y[6] = 0.0;
    y /= y.norm();
    VectorXd w = testing::random_tangent(*S6, y, rng);
    w[5] = w[6] = 0.0;
    w = S6->project_tangent(y, w);
    w /= w.norm();
    double max_leak = 0.0;
    S6->geodesic({y, w, 0.0}, 1.0, 1e-3, [&](const GeodesicState& s) {
        max_leak = std::max(max_leak, std::hypot(s.x[5], s.x[6]));
    });
    CHECK(max_leak < 1e-8);
}

TEST_CASE("Sp(2) geodesics through left translates are one-parameter subgroups") {
    Rng rng(263);
    const auto M = sp2_manifold();
    for (int i = 0; i < 3; ++i) {
        const QuatMat2 A = QuatMat2::from_vec(zoo::sp2_random(rng).to_vec());
        QuatMat2 xi = testing::random_sp2_algebra(rng);
        const double n = (A * xi).to_vec().norm();
        xi = xi * (1.0 / n);
        const VectorXd x0 = A.to_vec();
        const VectorXd v0 = (A * xi).to_vec();
        const GeodesicState end = M->geodesic({x0, v0, 0.0}, 1.0, 1e-3);
        const VectorXd expected = (A * testing::quatmat_exp(xi)).to_vec();
        CHECK((end.x - expected).norm() < 1e-5);
    }
}

TEST_CASE("energy drift stays below 1e-8 per unit length") {
    Rng rng(269);
    const auto M = sp2_manifold();
    const VectorXd x = zoo::sp2_random(rng).to_vec();
    VectorXd v = testing::random_tangent(*M, x, rng);
    double worst = 0.0;
    M->geodesic({x, v, 0.0}, 1.0, 1e-3, [&](const GeodesicState& s) {
        worst = std::max(worst, std::abs(s.v.norm() - 1.0));
    });
    CHECK(worst < 1e-8);
}

TEST_CASE("sectional curvature agrees with a geodesic-deviation oracle") {
    // |J(t)|/t = 1 - K t^2/6 + O(t^4) for the spread of nearby geodesics.
    Rng rng(271);
    for (int amb : {3, 4, 8}) {
        const auto S = sphere(amb);
        const VectorXd x = rng.unit_vector(amb);
        VectorXd v = testing::random_tangent(*S, x, rng);
        VectorXd w = testing::random_tangent(*S, x, rng);
        w = (w - w.dot(v) * v).normalized();

        const double t = 0.1, eps = 0.01;
        const VectorXd xp = S->geodesic({x, (v + eps * w).eval(), 0.0}, t, 1e-3).x;
        const VectorXd xm = S->geodesic({x, (v - eps * w).eval(), 0.0}, t, 1e-3).x;
        const double jnorm = (xp - xm).norm() / (2.0 * eps);
        const double K_est = 6.0 * (1.0 - jnorm / t) / (t * t);
        CHECK(std::abs(K_est - S->sectional_curvature(x, v, w)) < 1e-3);
    }
}

TEST_CASE("degenerate plane raises an error") {
    const auto S = sphere(4);
    Rng rng(277);
    const VectorXd x = rng.unit_vector(4);
    const VectorXd v = testing::random_tangent(*S, x, rng);
    CHECK_THROWS_AS(S->sectional_curvature(x, v, v), DomainError);
}
