#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eqgeo/convex_body.hpp"
#include "eqgeo/errors.hpp"
#include "eqgeo/projection.hpp"
#include "support.hpp"

using namespace eqgeo;

namespace {
ConvexBody unit_square() {
    return ConvexBody::polytope({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
}
}  // namespace

TEST_CASE("square corner and edge projections") {
    const auto square = unit_square();

    auto corner = project(square, {2, 2});
    CHECK(distance(corner.point, Point{1, 1}) < 1e-10);
    CHECK(corner.residual <= kTolFeas);

    auto edge = project(square, {0, 5});
    CHECK(distance(edge.point, Point{0, 1}) < 1e-10);
    CHECK(edge.residual <= kTolFeas);

    auto inside = project(square, {0.25, -0.5});
    CHECK(distance(inside.point, Point{0.25, -0.5}) < 1e-12);
}

TEST_CASE("ball projection is the analytic radial point") {
    const auto ball = ConvexBody::ball({1, 1}, 2.0);
    auto pr = project(ball, {1, 6});
    CHECK(distance(pr.point, Point{1, 3}) < 1e-12);
    CHECK(pr.residual == 0.0);
    CHECK(pr.iterations == 0);

    auto inside = project(ball, {0.5, 0.5});
    CHECK(distance(inside.point, Point{0.5, 0.5}) < 1e-12);
}

TEST_CASE("projection is idempotent") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const auto gens = support::random_generators(rng, 3, 8);
        const auto body = ConvexBody::polytope(gens);
        const auto q = support::exterior_query(rng, gens);
        const auto p = project(body, q).point;
        CHECK(distance(project(body, p).point, p) < 1e-7);
    }
}

TEST_CASE("variational characterization in both directions") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const auto gens = support::random_generators(rng, n, 6 + trial % 5);
        const auto body = ConvexBody::polytope(gens);
        const auto q = support::exterior_query(rng, gens);
        const auto p = project(body, q).point;

        // <v - p, q - p> <= 0 over the generators certifies the projection.
        CHECK(projection_certificate(body, p, q) <= kTolFeas);

        // Any hull point visibly away from p must fail the same inequality.
        const Point other = support::hull_point(rng, gens);
        if (distance(other, p) > 1e-3) {
            CHECK(projection_certificate(body, other, q) > kTolFeas);
        }
    }
}

TEST_CASE("projection agrees with the face-enumeration oracle") {
    Rng rng(23);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const std::size_t m = 4 + trial % 7;
        const auto gens = support::random_generators(rng, n, m);
        const auto body = ConvexBody::polytope(gens);
        const Point q = trial % 3 == 0 ? rng.point_in_box(Point(n, -3.0), Point(n, 3.0))
                                       : support::exterior_query(rng, gens);
        const auto pr = project(body, q);
        const auto oracle = support::nearest_point_oracle(gens, q);
        CHECK(std::fabs(distance(pr.point, q) - oracle.dist) < 1e-8);
        CHECK(distance(pr.point, oracle.point) < 1e-6);
    }
}

TEST_CASE("projection is nonexpansive") {
    Rng rng(31);
    const auto gens = support::random_generators(rng, 3, 9);
    const auto body = ConvexBody::polytope(gens);
    for (int trial = 0; trial < 50; ++trial) {
        const Point x = rng.point_in_box(Point(3, -4.0), Point(3, 4.0));
        const Point y = rng.point_in_box(Point(3, -4.0), Point(3, 4.0));
        const double lhs = distance(project(body, x).point, project(body, y).point);
        CHECK(lhs <= distance(x, y) + 10.0 * kTolFeas);
    }
}

TEST_CASE("iteration cap raises NonConvergence with the best iterate") {
    Rng rng(43);
    const auto gens = support::random_generators(rng, 4, 14);
    const auto body = ConvexBody::polytope(gens);
    const auto q = support::exterior_query(rng, gens);
    try {
        project(body, q, kTolFeas, 1);
        FAIL("expected NonConvergence");
    } catch (const NonConvergence& e) {
        CHECK(e.best_point.size() == 4);
        CHECK(e.iterations == 1);
        CHECK(e.residual > 0.0);
    }
}

TEST_CASE("batch projection matches the serial reference") {
    Rng rng(53);
    const auto gens = support::random_generators(rng, 3, 10);
    const auto body = ConvexBody::polytope(gens);
    std::vector<Point> queries;
    for (int i = 0; i < 64; ++i)
        queries.push_back(rng.point_in_box(Point(3, -4.0), Point(3, 4.0)));

    const auto par = batch_project(body, queries);
    const auto ser = serial::batch_project(body, queries);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].point == ser[i].point);
        CHECK(par[i].residual == ser[i].residual);
    }
}

TEST_CASE("contains accepts hull points and rejects exterior ones") {
    Rng rng(61);
    const auto gens = support::random_generators(rng, 2, 7);
    const auto body = ConvexBody::polytope(gens);
    for (int trial = 0; trial < 30; ++trial) {
        CHECK(contains(body, support::hull_point(rng, gens)));
        CHECK(!contains(body, support::exterior_query(rng, gens)));
    }
}
