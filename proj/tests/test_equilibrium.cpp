#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "eqgeo/equilibrium.hpp"
#include "eqgeo/errors.hpp"
#include "eqgeo/oracle.hpp"
#include "support.hpp"

using namespace eqgeo;

namespace {

ConvexBody unit_square() {
    return ConvexBody::polytope({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
}

ConvexBody unit_interval() { return ConvexBody::polytope({{-1.0}, {1.0}}); }

Bifunction objective_difference(ObjectiveSpec f) {
    BifunctionSpec spec;
    spec.kind = BifunctionSpec::Kind::objective_difference;
    spec.f = std::move(f);
    spec.label = spec.f.label;
    return spec.instantiate();
}

ObjectiveSpec sq_norm_at(Point anchor) {
    ObjectiveSpec f;
    f.kind = ObjectiveSpec::Kind::sq_norm;
    f.anchor = std::move(anchor);
    f.label = "sq-norm";
    return f;
}

}  // namespace

TEST_CASE("empty tester set accepts every candidate") {
    const Bifunction g = objective_difference(sq_norm_at({0.0}));
    const std::vector<Point> candidates{{-0.5}, {0.0}, {0.7}};
    const auto rep = eq_set(g, candidates, {});
    CHECK(rep.solutions == candidates);
    CHECK(rep.checked_set_size == 0);
    CHECK(rep.max_violation == 0.0);
}

TEST_CASE("x^2 on the interval grid: only the origin survives") {
    const Bifunction g = objective_difference(sq_norm_at({0.0}));
    const auto rep = brute_eq(g, make_grid(unit_interval(), 0.01).points, unit_interval(), 0.01);
    REQUIRE(rep.solutions.size() == 1);
    CHECK(rep.solutions[0][0] == 0.0);
}

TEST_CASE("solutions shrink as the tester set grows") {
    Rng rng(3);
    const auto body = unit_square();
    const auto grid = make_grid(body, 0.25).points;
    const Bifunction g = objective_difference(sq_norm_at({0.3, -0.2}));

    std::vector<Point> some(grid.begin(), grid.begin() + grid.size() / 2);
    const auto with_some = eq_set(g, grid, some);
    const auto with_all = eq_set(g, grid, grid);
    CHECK(with_all.solutions.size() <= with_some.solutions.size());
    for (const auto& s : with_all.solutions) {
        CHECK(std::find(with_some.solutions.begin(), with_some.solutions.end(), s) !=
              with_some.solutions.end());
    }
}

TEST_CASE("reduction gate: undeclared quasiconvexity is refused, force is marked") {
    ObjectiveSpec f = sq_norm_at({0.0});
    f.quasiconcave = false;  // x^2 is not quasiconcave on the interval
    const Bifunction g = objective_difference(f);
    const auto candidates = make_grid(unit_interval(), 0.1).points;

    CHECK_THROWS_AS(eq_reduced(g, candidates, unit_interval(), Reduction::generators),
                    ReductionUnsound);
    CHECK_THROWS_WITH_AS(eq_reduced(g, candidates, unit_interval(), Reduction::generators),
                         doctest::Contains("reduction unsound"), ReductionUnsound);

    const auto forced = eq_reduced(g, candidates, unit_interval(), Reduction::generators,
                                   kTolEq, true);
    CHECK(forced.forced_unsound);
    CHECK(forced.reduction_used == Reduction::generators);
    // Both endpoints carry the maximal value of x^2, so nothing is rejected.
    CHECK(forced.solutions.size() == candidates.size());
}

TEST_CASE("exposed reduction additionally needs lower semicontinuity") {
    Bifunction g = objective_difference(sq_norm_at({0.0, 0.0}));
    g.declared_quasiconvex_2nd = true;
    g.declared_lsc_2nd = false;
    const auto candidates = make_grid(unit_square(), 0.5).points;
    CHECK_THROWS_AS(eq_reduced(g, candidates, unit_square(), Reduction::exposed),
                    ReductionUnsound);
}

TEST_CASE("generator reduction agrees with brute force for a convex tester slot") {
    Rng rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const auto body = support::random_polytope(rng, 2, 5);

        // g(u, v) = |u - a|^2 + <c, v> - k, convex (hence quasiconvex) in v.
        BifunctionSpec spec;
        spec.kind = BifunctionSpec::Kind::separable_sum;
        spec.phi = sq_norm_at({rng.uniform(-1, 1), rng.uniform(-1, 1)});
        spec.psi.kind = ObjectiveSpec::Kind::affine;
        spec.psi.coeffs = {{rng.uniform(-1, 1), rng.uniform(-1, 1)}};
        spec.psi.offsets = {0.0};
        spec.psi.label = "affine";
        spec.shift = rng.uniform(0.5, 4.0);
        spec.label = "separable";
        const Bifunction g = spec.instantiate();
        CHECK(g.declared_quasiconvex_2nd);

        const auto candidates = make_grid(body, 0.25).points;
        const auto reduced = eq_reduced(g, candidates, body, Reduction::generators);
        const auto brute = brute_eq(g, candidates, body, 0.05);
        const auto cmp = compare(reduced, brute);

        // The generator testers dominate the grid testers, so the reduced
        // set can only be smaller; it must never be larger.
        CHECK(cmp.only_in_reduced.empty());
        if (!cmp.agree) {
            // Any gap candidate sits within grid spacing of the threshold.
            CHECK(cmp.hausdorff_gap <= 0.25 + 10.0 * kTolEq);
        }
    }
}

TEST_CASE("injected interior generators do not change the extreme reduction") {
    Rng rng(15);
    for (int trial = 0; trial < 8; ++trial) {
        auto gens = support::random_generators(rng, 2, 6);
        const auto body = ConvexBody::polytope(gens);

        auto padded_gens = gens;
        for (int extra = 0; extra < 4; ++extra)
            padded_gens.push_back(support::hull_point(rng, gens));
        const auto padded = ConvexBody::polytope(padded_gens);

        // f must be genuinely quasiconcave for the reduction identity: with
        // g(u,v) = f(u) - f(v) the binding testers minimize f, and only a
        // concave f pins that minimum to the vertices.
        ObjectiveSpec f;
        f.kind = ObjectiveSpec::Kind::neg_sq_norm;
        f.anchor = {0.1, 0.4};
        f.quasiconcave = true;
        f.label = "neg-sq-norm";
        const Bifunction g = objective_difference(std::move(f));

        const auto candidates = make_grid(body, 0.5).points;
        const auto base = eq_reduced(g, candidates, body, Reduction::generators);
        const auto via_extreme = eq_reduced(g, candidates, padded, Reduction::extreme);
        CHECK(base.solutions == via_extreme.solutions);
        CHECK(via_extreme.reduction_used == Reduction::extreme);
    }
}

TEST_CASE("argmin of max(0, x) over the interval is the nonpositive band") {
    ObjectiveSpec f;
    f.kind = ObjectiveSpec::Kind::max_affine;
    f.coeffs = {{0.0}, {1.0}};
    f.offsets = {0.0, 0.0};
    f.quasiconcave = true;
    f.label = "max(0,x)";

    const auto candidates = make_grid(unit_interval(), 0.01).points;
    const auto rep = argmin_quasiconcave([&f](const Point& p) { return f(p); },
                                         unit_interval(), candidates);
    CHECK(rep.vertex_min == 0.0);
    CHECK(rep.candidate_min == 0.0);
    CHECK(rep.minima_agree);
    REQUIRE(!rep.eq.solutions.empty());
    for (const auto& s : rep.eq.solutions) CHECK(s[0] <= 0.0 + 1e-12);
    // 101 grid points of [-1, 0].
    CHECK(rep.eq.solutions.size() == 101);
}

TEST_CASE("solve_vi: zero field accepts everything, constant field picks a face") {
    const auto square = unit_square();
    const auto candidates = make_grid(square, 0.5).points;

    const auto all = solve_vi([](const Point& p) { return Point(p.size(), 0.0); }, square,
                              candidates);
    CHECK(all.solutions.size() == candidates.size());

    // T == (1, 0): <T, v - u> >= 0 for all v forces u to minimize x.
    const auto face = solve_vi([](const Point&) { return Point{1.0, 0.0}; }, square,
                               candidates);
    REQUIRE(!face.solutions.empty());
    for (const auto& s : face.solutions) CHECK(s[0] == -1.0);
}

TEST_CASE("solve_vi with T(x) = x - xstar finds the metric projection") {
    const auto square = unit_square();
    std::vector<Point> candidates = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}, {0, 0}, {0.5, 0.5}};
    const auto rep = solve_vi([](const Point& p) { return Point{p[0] - 2.0, p[1] - 2.0}; },
                              square, candidates);
    REQUIRE(rep.solutions.size() == 1);
    CHECK(distance(rep.solutions[0], Point{1, 1}) == 0.0);
}

TEST_CASE("check_quasiconvex passes convex, witnesses concave") {
    const auto square = unit_square();

    const auto ok = check_quasiconvex([](const Point& p) { return norm_sq(p); }, square, 64, 9);
    CHECK(ok.passed);

    const auto affine_ok =
        check_quasiconvex([](const Point& p) { return 3.0 * p[0] - p[1]; }, square, 64, 9);
    CHECK(affine_ok.passed);

    const auto bad = check_quasiconvex([](const Point& p) { return -norm_sq(p); }, square, 64, 9);
    REQUIRE(!bad.passed);
    REQUIRE(bad.witness.has_value());
    const auto& w = *bad.witness;
    const Point mid = lerp(w.v1, w.v2, w.t);
    CHECK(-norm_sq(mid) > w.end_max);
    CHECK(w.value == -norm_sq(mid));
}

TEST_CASE("non-finite bifunction values name the offending pair") {
    Bifunction g;
    g.label = "poison";
    g.eval = [](const Point& u, const Point& v) {
        if (u[0] > 0.5 && v[0] < -0.5) return std::numeric_limits<double>::quiet_NaN();
        return u[0] - v[0];
    };
    // The poison tester comes first so the scan reaches it before the
    // candidate is rejected on a finite violation.
    const std::vector<Point> candidates{{0.0}, {1.0}};
    const std::vector<Point> testers{{-1.0}, {0.0}};
    try {
        eq_set(g, candidates, testers);
        FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("1.0") != std::string::npos);
        CHECK(msg.find("-1.0") != std::string::npos);
    }
}

TEST_CASE("parallel eq_set matches the serial reference") {
    Rng rng(21);
    const auto body = unit_square();
    const auto grid = make_grid(body, 0.1).points;
    const Bifunction g = objective_difference(sq_norm_at({0.3, 0.3}));
    const auto par = eq_set(g, grid, grid);
    const auto ser = serial::eq_set(g, grid, grid);
    CHECK(par.solutions == ser.solutions);
    CHECK(par.max_violation == ser.max_violation);
    CHECK(par.checked_set_size == ser.checked_set_size);
}
