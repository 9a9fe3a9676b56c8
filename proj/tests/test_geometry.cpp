#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "eqgeo/errors.hpp"
#include "eqgeo/geometry.hpp"
#include "eqgeo/projection.hpp"
#include "support.hpp"

using namespace eqgeo;

namespace {
ConvexBody unit_square() {
    return ConvexBody::polytope({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
}

bool same_point_set(std::vector<Point> a, std::vector<Point> b, double tol = 1e-9) {
    if (a.size() != b.size()) return false;
    std::sort(a.begin(), a.end(), lex_less);
    std::sort(b.begin(), b.end(), lex_less);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (distance(a[i], b[i]) > tol) return false;
    return true;
}
}  // namespace

TEST_CASE("extreme points of the square, with a redundant midpoint") {
    const auto square = unit_square();
    CHECK(extreme_points(square).size() == 4);

    const auto padded =
        ConvexBody::polytope({{1, 1}, {-1, 1}, {0, 1}, {-1, -1}, {1, -1}, {0.25, -0.25}});
    const auto ext = extreme_points(padded);
    CHECK(same_point_set(ext, {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}));
}

TEST_CASE("a singleton polytope is its own extreme set") {
    const auto pt = ConvexBody::polytope({{0.5, -0.5, 2.0}});
    CHECK(extreme_points(pt).size() == 1);
}

TEST_CASE("extreme points generate the same hull") {
    Rng rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 2 + trial % 3;
        auto gens = support::random_generators(rng, n, 6);
        // Inject points that are visibly inside the hull.
        for (int extra = 0; extra < 3; ++extra) gens.push_back(support::hull_point(rng, gens));
        const auto body = ConvexBody::polytope(gens);
        const auto ext = extreme_points(body);
        CHECK(ext.size() <= gens.size());

        // Every generator, dropped or kept, stays inside the survivors' hull.
        for (const auto& g : gens)
            CHECK(distance(project_onto_hull(ext, g).point, g) <= 1e-7);
    }
}

TEST_CASE("extreme set of a ball is rejected, its sample is spread") {
    const auto ball = ConvexBody::ball({0, 0}, 1.0);
    CHECK_THROWS_AS(extreme_points(ball), InputError);

    const auto sample = exposed_points_sample(ball, 4);
    REQUIRE(sample.size() == 4);
    CHECK(distance(sample[0], Point{1, 0}) < 1e-12);
    CHECK(distance(sample[1], Point{0, 1}) < 1e-12);
    CHECK(distance(sample[2], Point{-1, 0}) < 1e-12);
    CHECK(distance(sample[3], Point{0, -1}) < 1e-12);

    for (const auto& p : exposed_points_sample(ConvexBody::ball({1, 2, 3}, 2.0), 64))
        CHECK(std::fabs(distance(p, Point{1, 2, 3}) - 2.0) < 1e-9);
}

TEST_CASE("square normal cones answer the directed probes") {
    const auto square = unit_square();

    CHECK(normal_cone_contains(square, {1, 1}, {2, 3}));
    CHECK(normal_cone_contains(square, {1, 1}, {1, 0}));
    CHECK(normal_cone_contains(square, {1, 1}, {0, 0}));
    CHECK(!normal_cone_contains(square, {1, 1}, {-0.1, 1}));

    CHECK(normal_cone_contains(square, {0, 1}, {0, 1}));
    CHECK(!normal_cone_contains(square, {0, 1}, {0.1, 1}));
    CHECK(!normal_cone_contains(square, {0, 1}, {0, -1}));

    // Interior base: only the zero direction belongs.
    CHECK(normal_cone_contains(square, {0, 0}, {0, 0}));
    CHECK(!normal_cone_contains(square, {0, 0}, {1, 0}));

    CHECK_THROWS_AS(normal_cone_contains(square, {2, 0}, {1, 0}), InputError);
}

TEST_CASE("gauss map keeps only unit directions of the cone") {
    const auto square = unit_square();
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(gauss_map_contains(square, {1, 1}, {s, s}));
    CHECK(!gauss_map_contains(square, {1, 1}, {1, 1}));  // right cone, wrong length
    CHECK(!gauss_map_contains(square, {0, 1}, {s, s}));
}

TEST_CASE("ball normal cones are the outward rays") {
    const auto ball = ConvexBody::ball({0, 0}, 1.0);
    CHECK(normal_cone_contains(ball, {1, 0}, {2, 0}));
    CHECK(normal_cone_contains(ball, {1, 0}, {0, 0}));
    CHECK(!normal_cone_contains(ball, {1, 0}, {1, 0.1}));
    CHECK(!normal_cone_contains(ball, {0, 0}, {1, 0}));
    CHECK(gauss_map_contains(ball, {1, 0}, {1, 0}));
}

TEST_CASE("locate_partition_cell matches the square examples") {
    const auto square = unit_square();
    CHECK(distance(locate_partition_cell(square, {2, 2}), Point{1, 1}) < 1e-9);
    CHECK(distance(locate_partition_cell(square, {0, 5}), Point{0, 1}) < 1e-9);
    CHECK_THROWS_AS(locate_partition_cell(square, {0.5, 0.5}), InputError);
}

TEST_CASE("partition cells are disjoint: the base is stable under restarts") {
    Rng rng(17);
    const auto gens = support::random_generators(rng, 2, 7);
    const auto body = ConvexBody::polytope(gens);
    for (int trial = 0; trial < 40; ++trial) {
        const auto q = support::exterior_query(rng, gens);
        const Point base = locate_partition_cell(body, q);
        CHECK(contains(body, base));
        CHECK(normal_cone_contains(body, base, sub(q, base)));

        // Walking toward the base keeps the point in the same cell.
        for (double t : {0.25, 0.5, 0.9}) {
            const Point mid = lerp(q, base, t);
            if (contains(body, mid)) continue;
            CHECK(distance(locate_partition_cell(body, mid), base) < 1e-6);
        }
    }
}

TEST_CASE("cell membership is equivalent to gauss map membership") {
    Rng rng(29);
    const auto gens = support::random_generators(rng, 3, 8);
    const auto body = ConvexBody::polytope(gens);
    for (int trial = 0; trial < 30; ++trial) {
        const auto q = support::exterior_query(rng, gens);
        const Point base = locate_partition_cell(body, q);
        Point dir = sub(q, base);
        const double len = norm(dir);
        REQUIRE(len > kTolFeas);
        for (auto& c : dir) c /= len;
        CHECK(gauss_map_contains(body, base, dir));
    }
}

TEST_CASE("farthest points of the square and of a ball") {
    const auto square = unit_square();
    const auto fr = farthest_points(square, {0.5, 0.5});
    REQUIRE(fr.points.size() == 1);
    CHECK(distance(fr.points[0], Point{-1, -1}) < 1e-12);
    CHECK(!fr.degenerate);

    // The center ties all four corners.
    const auto tied = farthest_points(square, {0, 0});
    CHECK(tied.points.size() == 4);

    const auto ball = ConvexBody::ball({1, 0}, 2.0);
    const auto bf = farthest_points(ball, {4, 0});
    REQUIRE(bf.points.size() == 1);
    CHECK(distance(bf.points[0], Point{-1, 0}) < 1e-12);

    const auto deg = farthest_points(ball, {1, 0});
    CHECK(deg.degenerate);
    for (const auto& p : deg.points) CHECK(std::fabs(distance(p, Point{1, 0}) - 2.0) < 1e-9);
}

TEST_CASE("farthest points are exposed") {
    Rng rng(37);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const auto gens = support::random_generators(rng, n, 5 + trial % 6);
        const auto body = ConvexBody::polytope(gens);
        const Point q = rng.point_in_box(Point(n, -3.0), Point(n, 3.0));
        for (const auto& p : farthest_points(body, q).points)
            CHECK(is_exposed_point(body, p));
    }
}

TEST_CASE("exposedness separates vertices from edge midpoints") {
    const auto square = unit_square();
    CHECK(is_exposed_point(square, {1, 1}));
    CHECK(!is_exposed_point(square, {0, 1}));

    const auto with_mid = ConvexBody::polytope({{1, 1}, {-1, 1}, {0, 1}, {0, -1}});
    CHECK(!is_exposed_point(with_mid, {0, 1}));

    const auto ball = ConvexBody::ball({0, 0}, 1.0);
    CHECK(is_exposed_point(ball, {0, 1}));
    CHECK(!is_exposed_point(ball, {0, 0.5}));
}

TEST_CASE("Cone wraps base membership and direction queries") {
    const Cone cone(unit_square(), {1, 1});
    CHECK(cone.contains({1, 1}));
    CHECK(!cone.contains({-1, 0}));
    CHECK(distance(cone.base(), Point{1, 1}) == 0.0);
    CHECK_THROWS_AS(Cone(unit_square(), {3, 0}), InputError);
}

TEST_CASE("parallel extreme points match the serial reference") {
    Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        auto gens = support::random_generators(rng, 3, 12);
        for (int extra = 0; extra < 6; ++extra) gens.push_back(support::hull_point(rng, gens));
        const auto body = ConvexBody::polytope(gens);
        CHECK(extreme_points(body) == serial::extreme_points(body));
    }
}
