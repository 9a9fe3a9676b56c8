#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eqgeo/errors.hpp"
#include "eqgeo/oracle.hpp"
#include "eqgeo/projection.hpp"
#include "support.hpp"

using namespace eqgeo;

namespace {
ConvexBody unit_square() {
    return ConvexBody::polytope({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
}
}  // namespace

TEST_CASE("grid of the unit square at coarse resolutions") {
    const auto nine = make_grid(unit_square(), 1.0);
    CHECK(nine.points.size() == 9);
    CHECK(nine.resolution == 1.0);

    // Far too coarse: only the anchor corner remains.
    const auto corner = make_grid(unit_square(), 10.0);
    REQUIRE(corner.points.size() == 1);
    CHECK(distance(corner.points[0], Point{-1, -1}) == 0.0);
}

TEST_CASE("grid of the unit ball at resolution 1 is the axis cross") {
    const auto grid = make_grid(ConvexBody::ball({0, 0}, 1.0), 1.0);
    CHECK(grid.points.size() == 5);
    for (const auto& p : grid.points) CHECK(norm(p) <= 1.0 + kTolFeas);
}

TEST_CASE("grid rejects bad inputs") {
    CHECK_THROWS_AS(make_grid(unit_square(), 0.0), InputError);
    CHECK_THROWS_AS(make_grid(unit_square(), -0.5), InputError);

    // An off-center ball whose lattice misses it entirely.
    CHECK_THROWS_AS(make_grid(ConvexBody::ball({0.0, 100.0}, 0.3), 10.0), InputError);

    const auto cube5 = ConvexBody::polytope({{0, 0, 0, 0, 0}, {1, 1, 1, 1, 1}});
    CHECK_THROWS_AS(make_grid(cube5, 0.5), InputError);
}

TEST_CASE("grid points are in lexicographic order and inside the body") {
    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const auto body = support::random_polytope(rng, 2, 6);
        const auto grid = make_grid(body, 0.2);
        REQUIRE(!grid.points.empty());
        for (std::size_t i = 1; i < grid.points.size(); ++i)
            CHECK(lex_less(grid.points[i - 1], grid.points[i]));
        for (const auto& p : grid.points) CHECK(contains(body, p, kTolFeas + 1e-12));
    }
}

TEST_CASE("refinement only adds points: coarse lattice is a sublattice") {
    const auto body = unit_square();
    const auto coarse = make_grid(body, 0.5);
    const auto fine = make_grid(body, 0.25);
    CHECK(fine.points.size() > coarse.points.size());
    for (const auto& p : coarse.points) {
        bool found = false;
        for (const auto& q : fine.points)
            if (distance(p, q) < 1e-12) found = true;
        CHECK(found);
    }
}

TEST_CASE("brute_eq answers through the same grid it builds") {
    const auto body = unit_square();
    Bifunction g;
    g.label = "x dominates";
    g.eval = [](const Point& u, const Point& v) { return v[0] - u[0]; };
    const auto candidates = make_grid(body, 0.5).points;
    const auto rep = brute_eq(g, candidates, body, 0.5);
    CHECK(rep.reduction_used == Reduction::none);
    CHECK(rep.checked_set_size == make_grid(body, 0.5).points.size());
    REQUIRE(!rep.solutions.empty());
    for (const auto& s : rep.solutions) CHECK(s[0] == 1.0);
}

TEST_CASE("compare conventions: empty sets, point mismatches, candidate guard") {
    EqReport a, b;
    a.candidates = b.candidates = {{0.0}, {1.0}};

    SUBCASE("both empty agree at gap zero") {
        const auto cmp = compare(a, b);
        CHECK(cmp.agree);
        CHECK(cmp.hausdorff_gap == 0.0);
    }

    SUBCASE("one empty gives an infinite gap") {
        a.solutions = {{0.0}};
        const auto cmp = compare(a, b);
        CHECK(!cmp.agree);
        CHECK(std::isinf(cmp.hausdorff_gap));
        REQUIRE(cmp.only_in_reduced.size() == 1);
        CHECK(cmp.only_in_brute.empty());
    }

    SUBCASE("disagreement measures the hausdorff gap") {
        a.solutions = {{0.0}};
        b.solutions = {{1.0}};
        const auto cmp = compare(a, b);
        CHECK(!cmp.agree);
        CHECK(cmp.hausdorff_gap == doctest::Approx(1.0));
    }

    SUBCASE("matching within tolerance agrees") {
        a.solutions = {{0.0}};
        b.solutions = {{kPointMatchTol / 2}};
        const auto cmp = compare(a, b);
        CHECK(cmp.agree);
        CHECK(cmp.hausdorff_gap <= kPointMatchTol);
    }

    SUBCASE("different candidate lists are refused") {
        b.candidates = {{0.0}};
        CHECK_THROWS_AS(compare(a, b), InputError);
    }
}

TEST_CASE("parallel grid filter matches the serial reference") {
    Rng rng(19);
    for (int trial = 0; trial < 6; ++trial) {
        const auto body = support::random_polytope(rng, 2, 5 + trial);
        const auto par = make_grid(body, 0.15);
        const auto ser = serial::make_grid(body, 0.15);
        CHECK(par.points == ser.points);
    }
}
