#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "fisherrao/hyperbolic.hpp"
#include "oracles.hpp"

using namespace fisherrao;

namespace {

std::mt19937_64 rng(20240517);

HPoint random_point(double xmin = -3.0, double xmax = 3.0, double ymin = 0.1, double ymax = 3.0) {
    std::uniform_real_distribution<double> ux(xmin, xmax);
    std::uniform_real_distribution<double> uy(ymin, ymax);
    return HPoint(ux(rng), uy(rng));
}

} // namespace

TEST_CASE("h_distance matches the closed vertical and arc cases") {
    CHECK(h_distance(HPoint(0, 1), HPoint(0, std::numbers::e)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(h_distance(HPoint(0, 1), HPoint(0, 1)) == 0.0);
    // arccosh(1.5), frozen from the Simpson arc-length oracle below
    CHECK(h_distance(HPoint(0, 1), HPoint(1, 1)) ==
          doctest::Approx(0.9624236501192069).epsilon(1e-14));
}

TEST_CASE("h_distance agrees with numeric arc length along the minimizing half-circle") {
    const HPoint p(0, 1), q(1, 1);
    const HGeodesic g = h_geodesic(p, q);
    REQUIRE(g.kind == HGeodesic::Kind::Arc);
    const auto gamma = [&](double t) {
        const HPoint pt = h_geodesic_point(g, t);
        return std::pair{pt.x, pt.y};
    };
    const auto coeff = [](double, double y) { return 1.0 / (y * y); };
    const double len = oracles::metric_arc_length(gamma, coeff, coeff, g.t_start, g.t_end);
    CHECK(std::abs(len - h_distance(p, q)) < 1e-8);
}

TEST_CASE("h_distance equals the log-quotient form") {
    for (int i = 0; i < 200; ++i) {
        const HPoint p = random_point();
        const HPoint q = random_point();
        const double closed = h_distance(p, q);
        const double quotient = oracles::log_quotient_distance(p.x, p.y, q.x, q.y);
        CHECK(std::abs(closed - quotient) < 1e-12);
    }
}

TEST_CASE("h_distance_halfspace examples") {
    Eigen::VectorXd a(2), b(2);
    a << 0, 0;
    b << 0.5, 0.5;
    const double d = h_distance_halfspace(HalfSpacePoint(a, 1.0), HalfSpacePoint(b, 1.0));
    CHECK(d == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(d == doctest::Approx(oracles::log_quotient_distance_halfspace(a, 1.0, b, 1.0))
                   .epsilon(1e-13));

    CHECK(h_distance_halfspace(HalfSpacePoint(a, 0.7), HalfSpacePoint(a, 0.7)) == 0.0);

    Eigen::VectorXd x1(1);
    x1 << 0;
    CHECK(h_distance_halfspace(HalfSpacePoint(x1, 1.0),
                               HalfSpacePoint(x1, std::exp(2.0))) ==
          doctest::Approx(2.0).epsilon(1e-14));

    Eigen::VectorXd x3(3);
    x3 << 0, 0, 0;
    CHECK_THROWS_AS(h_distance_halfspace(HalfSpacePoint(a, 1.0), HalfSpacePoint(x3, 1.0)),
                    invalid_parameter);
}

TEST_CASE("h_geodesic constructions") {
    SUBCASE("symmetric pair gives a centered arc") {
        const HGeodesic g = h_geodesic(HPoint(-1, 1), HPoint(1, 1));
        REQUIRE(g.kind == HGeodesic::Kind::Arc);
        CHECK(g.c == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(g.R == doctest::Approx(std::numbers::sqrt2).epsilon(1e-14));
    }
    SUBCASE("vertical pair") {
        const HGeodesic g = h_geodesic(HPoint(0, 1), HPoint(0, 3));
        REQUIRE(g.kind == HGeodesic::Kind::Vertical);
        CHECK(g.x0 == 0.0);
    }
    SUBCASE("center is equidistant from both endpoints") {
        const HPoint p(0, 2), q(3, 1);
        const HGeodesic g = h_geodesic(p, q);
        REQUIRE(g.kind == HGeodesic::Kind::Arc);
        CHECK(std::abs(std::hypot(p.x - g.c, p.y) - std::hypot(q.x - g.c, q.y)) < 1e-12);
    }
    SUBCASE("degenerate pair throws") {
        CHECK_THROWS_AS(h_geodesic(HPoint(1, 2), HPoint(1, 2)), invalid_parameter);
    }
    SUBCASE("endpoints are reproduced at t_start and t_end") {
        for (int i = 0; i < 100; ++i) {
            const HPoint p = random_point();
            const HPoint q = random_point();
            if (p == q) continue;
            const HGeodesic g = h_geodesic(p, q);
            const HPoint ps = h_geodesic_point(g, g.t_start);
            const HPoint qs = h_geodesic_point(g, g.t_end);
            CHECK(std::abs(ps.x - p.x) < 1e-12);
            CHECK(std::abs(ps.y - p.y) < 1e-12);
            CHECK(std::abs(qs.x - q.x) < 1e-12);
            CHECK(std::abs(qs.y - q.y) < 1e-12);
        }
    }
}

TEST_CASE("h_geodesic_point parametrization") {
    CHECK(h_geodesic_point(HGeodesic{HGeodesic::Kind::Vertical, 0.0, 0, 0, 0, 0}, 0.0) ==
          HPoint(0, 1));
    const HGeodesic arc{HGeodesic::Kind::Arc, 0.0, 0.0, 1.0, 0, 0};
    const HPoint at0 = h_geodesic_point(arc, 0.0);
    CHECK(at0.x == doctest::Approx(0.0));
    CHECK(at0.y == doctest::Approx(1.0));
    // unit speed
    CHECK(h_distance(h_geodesic_point(arc, 0.0), h_geodesic_point(arc, 1.0)) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("geodesics are unit speed") {
    std::uniform_real_distribution<double> ut(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        const HPoint p = random_point();
        const HPoint q = random_point();
        if (p == q) continue;
        const HGeodesic g = h_geodesic(p, q);
        const double t1 = ut(rng), t2 = ut(rng);
        const double d = h_distance(h_geodesic_point(g, t1), h_geodesic_point(g, t2));
        CHECK(std::abs(d - std::abs(t1 - t2)) < 1e-10);
    }
}

TEST_CASE("h_interpolate endpoints, midpoints and proportionality") {
    const HPoint p(-1, 1), q(1, 1);
    const HPoint at0 = h_interpolate(p, q, 0.0);
    CHECK(std::abs(at0.x - p.x) < 1e-12);
    CHECK(std::abs(at0.y - p.y) < 1e-12);

    const HPoint vmid = h_interpolate(HPoint(0, 1), HPoint(0, std::exp(2.0)), 0.5);
    CHECK(vmid.x == doctest::Approx(0.0));
    CHECK(vmid.y == doctest::Approx(std::numbers::e).epsilon(1e-13));

    const HPoint amid = h_interpolate(p, q, 0.5);
    CHECK(amid.x == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(amid.y == doctest::Approx(std::numbers::sqrt2).epsilon(1e-13));

    std::uniform_real_distribution<double> us(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const HPoint a = random_point();
        const HPoint b = random_point();
        const double s = us(rng);
        const HPoint m = h_interpolate(a, b, s);
        CHECK(std::abs(h_distance(a, m) - s * h_distance(a, b)) < 1e-10);
    }

    const HPoint same = h_interpolate(p, p, 0.7);
    CHECK(same == p);
}

TEST_CASE("h_log and h_exp") {
    const HPoint p(0, 1);
    const HTangent zero = h_log(p, p);
    CHECK(zero.vx == 0.0);
    CHECK(zero.vy == 0.0);
    CHECK(h_exp(zero) == p);

    const HPoint q(2, 3);
    const HPoint back = h_exp(h_log(p, q));
    CHECK(std::abs(back.x - q.x) < 1e-10);
    CHECK(std::abs(back.y - q.y) < 1e-10);

    for (int i = 0; i < 200; ++i) {
        const HPoint a = random_point();
        const HPoint b = random_point();
        const HTangent v = h_log(a, b);
        CHECK(std::abs(h_norm(v) - h_distance(a, b)) < 1e-10);
        const HPoint c = h_exp(v);
        CHECK(std::abs(c.x - b.x) < 1e-10);
        CHECK(std::abs(c.y - b.y) < 1e-10);
    }
}

TEST_CASE("h_circle points are equidistant from the center") {
    const auto check_circle = [](const HPoint& center, double rho) {
        const HCircle circle = h_circle(center, rho);
        for (int k = 0; k < 8; ++k) {
            const double theta = 2.0 * std::numbers::pi * k / 8;
            const HPoint pt(circle.center.x + circle.radius * std::cos(theta),
                            circle.center.y + circle.radius * std::sin(theta));
            CHECK(std::abs(h_distance(center, pt) - rho) < 1e-10);
        }
    };
    SUBCASE("unit circle at (0,1)") {
        const HCircle circle = h_circle(HPoint(0, 1), 1.0);
        CHECK(circle.center.x == doctest::Approx(0.0));
        CHECK(circle.center.y == doctest::Approx(std::cosh(1.0)).epsilon(1e-14));
        CHECK(circle.radius == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
        check_circle(HPoint(0, 1), 1.0);
    }
    SUBCASE("off-axis circle") { check_circle(HPoint(2, 3), 0.5); }
    SUBCASE("small radius limit") {
        const HCircle circle = h_circle(HPoint(0, 1), 1e-9);
        CHECK(circle.radius < 2e-9);
        CHECK(circle.center.y == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("nonpositive radius throws") {
        CHECK_THROWS_AS(h_circle(HPoint(0, 1), 0.0), invalid_parameter);
    }
}

TEST_CASE("metric axioms on random samples") {
    SUBCASE("symmetry") {
        for (int i = 0; i < 500; ++i) {
            const HPoint p = random_point();
            const HPoint q = random_point();
            CHECK(std::abs(h_distance(p, q) - h_distance(q, p)) < 1e-14);
        }
    }
    SUBCASE("identity of indiscernibles") {
        for (int i = 0; i < 200; ++i) {
            const HPoint p = random_point();
            CHECK(h_distance(p, p) == 0.0);
            const HPoint q = random_point();
            if (!(p == q)) {
                CHECK(h_distance(p, q) > 1e-12);
            }
        }
    }
    SUBCASE("triangle inequality") {
        for (int i = 0; i < 1000; ++i) {
            const HPoint p = random_point();
            const HPoint q = random_point();
            const HPoint r = random_point();
            CHECK(h_distance(p, r) <= h_distance(p, q) + h_distance(q, r) + 1e-12);
        }
    }
    SUBCASE("invariance under horizontal translation and scaling") {
        std::uniform_real_distribution<double> uc(0.2, 5.0);
        std::uniform_real_distribution<double> ub(-10.0, 10.0);
        for (int i = 0; i < 300; ++i) {
            const HPoint p = random_point();
            const HPoint q = random_point();
            const double c = uc(rng);
            const double b = ub(rng);
            const HPoint pm(c * p.x + b, c * p.y);
            const HPoint qm(c * q.x + b, c * q.y);
            CHECK(std::abs(h_distance(p, q) - h_distance(pm, qm)) < 1e-12);
        }
    }
}

TEST_CASE("closed form agrees with variational minimal path length") {
    for (int i = 0; i < 8; ++i) {
        const HPoint p = random_point();
        const HPoint q = random_point();
        if (p == q) continue;
        const double variational = oracles::variational_halfplane_length(p.x, p.y, q.x, q.y);
        CHECK(std::abs(variational - h_distance(p, q)) < 1e-4);
    }
}

TEST_CASE("invalid points are rejected") {
    CHECK_THROWS_AS(HPoint(0.0, 0.0), invalid_parameter);
    CHECK_THROWS_AS(HPoint(0.0, -1.0), invalid_parameter);
    Eigen::VectorXd empty(0);
    CHECK_THROWS_AS(HalfSpacePoint(empty, 1.0), invalid_parameter);
}
