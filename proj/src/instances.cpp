#include "eqgeo/instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eqgeo/errors.hpp"
#include "eqgeo/figure.hpp"
#include "eqgeo/geometry.hpp"
#include "eqgeo/oracle.hpp"
#include "eqgeo/projection.hpp"

namespace eqgeo {

const char* to_string(InstanceKind k) {
    switch (k) {
        case InstanceKind::projection: return "project";
        case InstanceKind::partition_probes: return "partition-probes";
        case InstanceKind::equilibrium: return "equilibrium";
        case InstanceKind::argmin: return "argmin";
        case InstanceKind::farthest: return "farthest";
        case InstanceKind::vi: return "vi";
        case InstanceKind::exposed_reduction: return "exposed-reduction";
        case InstanceKind::open_ladder: return "open-ladder";
        case InstanceKind::partition_figure: return "partition-figure";
    }
    return "unknown";
}

std::vector<Point> instance_candidates(const CatalogInstance& inst) {
    std::vector<Point> out;
    if (inst.candidate_resolution > 0.0)
        out = make_grid(inst.body, inst.candidate_resolution).points;
    out.insert(out.end(), inst.extra_candidates.begin(), inst.extra_candidates.end());
    return out;
}

std::vector<Point> open_interval_grid(double spacing) {
    std::vector<Point> pts;
    for (std::size_t j = 0;; ++j) {
        const double x = -1.0 + spacing + static_cast<double>(j) * spacing;
        if (x > 1.0 - spacing + 1e-12) break;
        pts.push_back({x});
    }
    return pts;
}

namespace {

ReplayResult fail(const CatalogInstance& inst, std::string msg) {
    return {inst.id, false, std::move(msg)};
}

ReplayResult pass(const CatalogInstance& inst) { return {inst.id, true, {}}; }

bool sets_match(const std::vector<Point>& a, const std::vector<Point>& b, double tol) {
    auto covered = [tol](const std::vector<Point>& xs, const std::vector<Point>& ys) {
        for (const auto& x : xs) {
            bool hit = false;
            for (const auto& y : ys)
                if (distance(x, y) <= tol) {
                    hit = true;
                    break;
                }
            if (!hit) return false;
        }
        return true;
    };
    return covered(a, b) && covered(b, a);
}

// Checks a solution list against the instance's expectation. Band
// expectations are 1-D: solutions must be exactly the candidates whose
// coordinate lies in [lo, hi].
bool expectation_holds(const Expected& exp, const std::vector<Point>& solutions,
                       const std::vector<Point>& candidates, std::string& why) {
    switch (exp.kind) {
        case Expected::Kind::points:
            if (!sets_match(solutions, exp.points, kPointMatchTol)) {
                why = "solution set does not match the expected points (got " +
                      std::to_string(solutions.size()) + ", expected " +
                      std::to_string(exp.points.size()) + ")";
                return false;
            }
            return true;
        case Expected::Kind::empty_set:
            if (!solutions.empty()) {
                why = "expected an empty solution set, got " +
                      std::to_string(solutions.size()) + " points";
                return false;
            }
            return true;
        case Expected::Kind::all_candidates:
            if (solutions.size() != candidates.size()) {
                why = "expected every candidate to solve (got " +
                      std::to_string(solutions.size()) + " of " +
                      std::to_string(candidates.size()) + ")";
                return false;
            }
            return true;
        case Expected::Kind::band: {
            std::size_t si = 0;
            for (const auto& c : candidates) {
                const bool in_band = c.at(0) >= exp.lo - 1e-12 && c.at(0) <= exp.hi + 1e-12;
                const bool solved = si < solutions.size() && solutions[si] == c;
                if (solved) ++si;
                if (in_band != solved) {
                    why = "band mismatch at candidate " + format_point(c);
                    return false;
                }
            }
            if (si != solutions.size()) {
                why = "solution list contains points outside the candidate order";
                return false;
            }
            return true;
        }
        case Expected::Kind::probes:
            return true;  // checked by the probe loop
    }
    why = "unknown expectation kind";
    return false;
}

ReplayResult run_projection(const CatalogInstance& inst) {
    const auto pr = project(inst.body, inst.xstar);
    if (pr.residual > kTolFeas)
        return fail(inst, "projection residual " + std::to_string(pr.residual) + " above tol");
    if (projection_certificate(inst.body, pr.point, inst.xstar) > kTolFeas)
        return fail(inst, "projection certificate failed at the returned point");
    if (inst.expected.kind == Expected::Kind::points &&
        distance(pr.point, inst.expected.points.at(0)) > 1e-6)
        return fail(inst, "projected to " + format_point(pr.point) + ", expected " +
                              format_point(inst.expected.points.at(0)));
    if (!contains(inst.body, inst.xstar)) {
        const Point cell = locate_partition_cell(inst.body, inst.xstar);
        if (distance(cell, pr.point) > 10.0 * kTolFeas)
            return fail(inst, "partition cell base disagrees with the projection point");
    }
    return pass(inst);
}

ReplayResult run_partition_probes(const CatalogInstance& inst) {
    for (const auto& probe : inst.cone_probes) {
        const bool got = normal_cone_contains(inst.body, probe.base, probe.dir);
        if (got != probe.inside)
            return fail(inst, "cone probe at base " + format_point(probe.base) + ", dir " +
                                  format_point(probe.dir) + ": got " +
                                  (got ? "inside" : "outside") + ", expected " +
                                  (probe.inside ? "inside" : "outside"));
    }
    return pass(inst);
}

ReplayResult run_equilibrium(const CatalogInstance& inst) {
    const Bifunction g = inst.bifunction.instantiate();
    const auto candidates = instance_candidates(inst);
    const EqReport brute = brute_eq(g, candidates, inst.body, inst.tester_resolution);

    std::string why;
    if (!expectation_holds(inst.expected, brute.solutions, candidates, why))
        return fail(inst, "brute answer: " + why);

    if (inst.mode == Reduction::none) return pass(inst);

    if (inst.force_unsound) {
        // The gate must hold before the forced run.
        bool gated = false;
        try {
            eq_reduced(g, candidates, inst.body, inst.mode);
        } catch (const ReductionUnsound&) {
            gated = true;
        }
        if (!gated) return fail(inst, "unsound reduction was not refused");
    }

    const EqReport reduced = eq_reduced(g, candidates, inst.body, inst.mode, kTolEq,
                                        inst.force_unsound, inst.exposed_count);
    if (inst.force_unsound && !reduced.forced_unsound)
        return fail(inst, "forced reduction is not marked in the report");

    if (inst.check_reduced) {
        if (!expectation_holds(inst.reduced_expected, reduced.solutions, candidates, why))
            return fail(inst, "reduced answer: " + why);
    } else {
        const ComparisonReport cmp = compare(reduced, brute);
        if (!cmp.agree) return fail(inst, "reduction disagrees with the brute oracle");
    }
    return pass(inst);
}

ReplayResult run_argmin(const CatalogInstance& inst) {
    const auto candidates = instance_candidates(inst);
    const ObjectiveSpec f = inst.objective;
    const auto rep = argmin_quasiconcave([&f](const Point& p) { return f(p); }, inst.body,
                                         candidates);

    std::string why;
    if (!expectation_holds(inst.expected, rep.eq.solutions, candidates, why))
        return fail(inst, why);
    if (inst.expected.has_min_value) {
        if (std::fabs(rep.vertex_min - inst.expected.min_value) > kTolEq)
            return fail(inst, "extreme-point minimum " + std::to_string(rep.vertex_min) +
                                  " differs from the expected " +
                                  std::to_string(inst.expected.min_value));
        if (!rep.minima_agree)
            return fail(inst, "candidate minimum does not reproduce the extreme-point minimum");
    }
    return pass(inst);
}

ReplayResult run_farthest(const CatalogInstance& inst) {
    const auto fr = farthest_points(inst.body, inst.xstar);
    if (inst.expected.kind == Expected::Kind::points &&
        !sets_match(fr.points, inst.expected.points, kPointMatchTol))
        return fail(inst, "farthest set does not match the expected points");
    for (const auto& p : fr.points)
        if (!is_exposed_point(inst.body, p))
            return fail(inst, "farthest point " + format_point(p) + " fails the exposedness check");
    return pass(inst);
}

ReplayResult run_vi(const CatalogInstance& inst) {
    const auto candidates = instance_candidates(inst);
    const OperatorSpec T = inst.op;
    const EqReport rep = solve_vi([&T](const Point& p) { return T(p); }, inst.body, candidates);

    std::string why;
    if (!expectation_holds(inst.expected, rep.solutions, candidates, why))
        return fail(inst, why);

    if (T.kind == OperatorSpec::Kind::shift_to) {
        // T(x) = x - xstar: the VI, the equilibrium form of the projection
        // gap, and the metric projection itself must all pick the same point.
        BifunctionSpec spec;
        spec.kind = BifunctionSpec::Kind::projection_gap;
        spec.xstar = T.vec;
        spec.label = "projection-gap";
        const EqReport viaEq =
            eq_reduced(spec.instantiate(), candidates, inst.body, Reduction::extreme);
        if (!sets_match(rep.solutions, viaEq.solutions, kPointMatchTol))
            return fail(inst, "VI and equilibrium solutions disagree");
        const auto pr = project(inst.body, T.vec);
        for (const auto& s : rep.solutions)
            if (distance(s, pr.point) > 10.0 * kTolEq)
                return fail(inst, "VI solution " + format_point(s) +
                                      " is not the metric projection " + format_point(pr.point));
    }
    return pass(inst);
}

ReplayResult run_exposed_reduction(const CatalogInstance& inst) {
    const Bifunction g = inst.bifunction.instantiate();
    const auto candidates = instance_candidates(inst);
    const EqReport reduced = eq_reduced(g, candidates, inst.body, Reduction::exposed, kTolEq,
                                        false, inst.exposed_count);
    const EqReport brute = brute_eq(g, candidates, inst.body, inst.tester_resolution);
    const ComparisonReport cmp = compare(reduced, brute);
    if (!cmp.agree) return fail(inst, "exposed reduction disagrees with the brute oracle");
    if (cmp.hausdorff_gap > 0.05)
        return fail(inst, "hausdorff gap " + std::to_string(cmp.hausdorff_gap) + " above 0.05");

    std::string why;
    if (!expectation_holds(inst.expected, reduced.solutions, candidates, why))
        return fail(inst, why);
    return pass(inst);
}

ReplayResult run_open_ladder(const CatalogInstance& inst) {
    BifunctionSpec spec;
    spec.kind = BifunctionSpec::Kind::objective_difference;
    spec.f = inst.objective;
    spec.label = inst.objective.label;
    const Bifunction g = spec.instantiate();
    const ObjectiveSpec f = inst.objective;

    double prev_min = std::numeric_limits<double>::infinity();
    double h = inst.ladder_base;
    for (int level = 0; level < inst.ladder_levels; ++level, h /= 2.0) {
        const auto candidates = open_interval_grid(h);
        // Testers one refinement finer: they reach closer to the open ends,
        // so they reject every candidate of the current level.
        const auto testers = open_interval_grid(h / 2.0);

        const EqReport rep = eq_set(g, candidates, testers);
        if (!rep.solutions.empty())
            return fail(inst, "level " + std::to_string(level) +
                                  ": expected an empty equilibrium set, got " +
                                  std::to_string(rep.solutions.size()));

        double level_min = std::numeric_limits<double>::infinity();
        for (const auto& c : candidates) level_min = std::min(level_min, f(c));
        if (!(level_min < prev_min))
            return fail(inst, "level " + std::to_string(level) +
                                  ": infimum approach stalled (minimum did not decrease)");
        prev_min = level_min;

        // ext of the open interval is empty, and an empty tester set accepts
        // every candidate.
        const EqReport all = eq_set(g, candidates, {});
        if (all.solutions.size() != candidates.size())
            return fail(inst, "empty tester set did not return every candidate");
    }
    return pass(inst);
}

}  // namespace

ReplayResult run_instance(const CatalogInstance& inst) {
    try {
        switch (inst.kind) {
            case InstanceKind::projection: return run_projection(inst);
            case InstanceKind::partition_probes: return run_partition_probes(inst);
            case InstanceKind::equilibrium: return run_equilibrium(inst);
            case InstanceKind::argmin: return run_argmin(inst);
            case InstanceKind::farthest: return run_farthest(inst);
            case InstanceKind::vi: return run_vi(inst);
            case InstanceKind::exposed_reduction: return run_exposed_reduction(inst);
            case InstanceKind::open_ladder: return run_open_ladder(inst);
            case InstanceKind::partition_figure: {
                if (inst.body.dim() != 2 || !inst.body.is_polytope())
                    return fail(inst, "partition figures need a 2-D polytope");
                const Figure fig = partition_figure(inst.body);
                for (const auto& row : fig.rows)
                    if (distance(row.base, project(inst.body, row.x).point) > 10.0 * kTolFeas)
                        return fail(inst, "figure cell base " + format_point(row.base) +
                                              " is not the projection of its sample");
                return pass(inst);
            }
        }
        return fail(inst, "unknown instance kind");
    } catch (const std::exception& e) {
        return fail(inst, std::string("exception: ") + e.what());
    }
}

namespace {

ConvexBody unit_square() {
    return ConvexBody::polytope({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
}

ConvexBody unit_interval() { return ConvexBody::polytope({{-1.0}, {1.0}}); }

CatalogInstance square_partition() {
    CatalogInstance inst{"square-partition", unit_square(), InstanceKind::partition_probes};
    auto& p = inst.cone_probes;
    // Corner cones are the outward quadrants; each pair of axis directions
    // lies on the cone boundary and still belongs to it.
    p.push_back({{1, 1}, {0.5, 2}, true});
    p.push_back({{1, 1}, {1, 0}, true});
    p.push_back({{1, 1}, {0, 1}, true});
    p.push_back({{1, 1}, {1, 1}, true});
    p.push_back({{1, 1}, {-0.1, 1}, false});
    p.push_back({{1, 1}, {1, -0.1}, false});
    p.push_back({{1, 1}, {-1, -1}, false});
    p.push_back({{-1, 1}, {-0.5, 2}, true});
    p.push_back({{-1, 1}, {-1, 0}, true});
    p.push_back({{-1, 1}, {0, 1}, true});
    p.push_back({{-1, 1}, {0.1, 1}, false});
    p.push_back({{-1, -1}, {-1, -1}, true});
    p.push_back({{-1, -1}, {-2, -0.3}, true});
    p.push_back({{-1, -1}, {0.1, -1}, false});
    p.push_back({{1, -1}, {1, -1}, true});
    p.push_back({{1, -1}, {0.2, -2}, true});
    p.push_back({{1, -1}, {-0.1, -1}, false});
    // Open edges carry the single outward axis ray.
    p.push_back({{0, 1}, {0, 1}, true});
    p.push_back({{0, 1}, {0, 3}, true});
    p.push_back({{0, 1}, {0.1, 1}, false});
    p.push_back({{0, 1}, {-0.1, 1}, false});
    p.push_back({{0, 1}, {1, 0}, false});
    p.push_back({{0, 1}, {0, -1}, false});
    p.push_back({{-1, 0}, {-1, 0}, true});
    p.push_back({{-1, 0}, {-2, 0}, true});
    p.push_back({{-1, 0}, {-1, 0.1}, false});
    p.push_back({{-1, 0}, {0, 1}, false});
    p.push_back({{0, -1}, {0, -1}, true});
    p.push_back({{0, -1}, {0.1, -1}, false});
    p.push_back({{1, 0}, {1, 0}, true});
    p.push_back({{1, 0}, {1, 1}, false});
    // The zero direction belongs to every cone.
    p.push_back({{1, 1}, {0, 0}, true});
    p.push_back({{0.3, -1}, {0, 0}, true});
    inst.expected.kind = Expected::Kind::probes;
    inst.property_tags = {"normal-cone-partition"};
    return inst;
}

CatalogInstance square_projection_corner() {
    CatalogInstance inst{"square-projection-corner", unit_square(), InstanceKind::projection};
    inst.xstar = {2, 2};
    inst.expected.points = {{1, 1}};
    inst.property_tags = {"metric-projection", "normal-cone-partition"};
    return inst;
}

CatalogInstance square_projection_edge() {
    CatalogInstance inst{"square-projection-edge", unit_square(), InstanceKind::projection};
    inst.xstar = {0, 5};
    inst.expected.points = {{0, 1}};
    inst.property_tags = {"metric-projection", "normal-cone-partition"};
    return inst;
}

CatalogInstance interval_x2() {
    CatalogInstance inst{"interval-x2", unit_interval(), InstanceKind::equilibrium};
    inst.bifunction.kind = BifunctionSpec::Kind::objective_difference;
    inst.bifunction.f.kind = ObjectiveSpec::Kind::sq_norm;
    inst.bifunction.f.anchor = {0.0};
    inst.bifunction.f.quasiconcave = false;  // x^2 dips in the middle
    inst.bifunction.f.usc = true;
    inst.bifunction.f.label = "x^2";
    inst.bifunction.label = "x^2(u) - x^2(v)";
    inst.candidate_resolution = 0.01;
    inst.tester_resolution = 0.01;
    inst.expected.points = {{0.0}};
    // Forcing the generator reduction past the gate accepts everything: both
    // endpoints have the maximal value, so no candidate is ever rejected.
    inst.mode = Reduction::generators;
    inst.force_unsound = true;
    inst.check_reduced = true;
    inst.reduced_expected.kind = Expected::Kind::all_candidates;
    inst.property_tags = {"generator-reduction-counterexample"};
    return inst;
}

CatalogInstance interval_max0x() {
    CatalogInstance inst{"interval-max0x", unit_interval(), InstanceKind::argmin};
    inst.objective.kind = ObjectiveSpec::Kind::max_affine;
    inst.objective.coeffs = {{0.0}, {1.0}};
    inst.objective.offsets = {0.0, 0.0};
    inst.objective.quasiconcave = true;  // nondecreasing on the line
    inst.objective.usc = true;
    inst.objective.label = "max(0,x)";
    inst.candidate_resolution = 0.01;
    inst.expected.kind = Expected::Kind::band;
    inst.expected.lo = -1.0;
    inst.expected.hi = 0.0;
    inst.expected.has_min_value = true;
    inst.expected.min_value = 0.0;
    inst.property_tags = {"quasiconcave-argmin"};
    return inst;
}

CatalogInstance open_interval_neg_x2() {
    CatalogInstance inst{"open-interval-neg-x2", unit_interval(), InstanceKind::open_ladder};
    inst.objective.kind = ObjectiveSpec::Kind::neg_sq_norm;
    inst.objective.anchor = {0.0};
    inst.objective.quasiconcave = true;  // concave
    inst.objective.usc = true;
    inst.objective.label = "-x^2";
    inst.ladder_base = 0.1;
    inst.ladder_levels = 4;
    inst.expected.kind = Expected::Kind::empty_set;
    inst.property_tags = {"open-domain-counterexample"};
    return inst;
}

CatalogInstance square_farthest() {
    CatalogInstance inst{"square-farthest", unit_square(), InstanceKind::farthest};
    inst.xstar = {0.5, 0.5};
    inst.expected.points = {{-1, -1}};
    inst.property_tags = {"farthest-exposed"};
    return inst;
}

CatalogInstance disk_exposed_reduction() {
    CatalogInstance inst{"disk-exposed-reduction", ConvexBody::ball({0.0, 0.0}, 1.0),
                       InstanceKind::exposed_reduction};
    const Point xstar{1.7, 0.9};
    inst.bifunction.kind = BifunctionSpec::Kind::objective_difference;
    inst.bifunction.f.kind = ObjectiveSpec::Kind::neg_distance_to;
    inst.bifunction.f.anchor = xstar;
    inst.bifunction.f.quasiconcave = true;  // concave
    inst.bifunction.f.usc = true;
    inst.bifunction.f.label = "-|x - (1.7, 0.9)|";
    inst.bifunction.label = "distance gap to (1.7, 0.9)";
    inst.candidate_resolution = 0.1;
    // The unique solution is the antipode of xstar on the sphere; no 0.1-grid
    // point comes close enough in distance-to-xstar to survive either tester
    // set, so both answers are exactly this point.
    const Point antipode = scale(xstar, -1.0 / norm(xstar));
    inst.extra_candidates = {antipode};
    inst.tester_resolution = 0.02;
    inst.exposed_count = 1024;
    inst.mode = Reduction::exposed;
    inst.expected.points = {antipode};
    inst.property_tags = {"exposed-point-reduction"};
    return inst;
}

CatalogInstance square_partition_figure() {
    CatalogInstance inst{"square-partition-figure", unit_square(), InstanceKind::partition_figure};
    inst.expected.kind = Expected::Kind::probes;  // checked by rendering, not a point set
    inst.property_tags = {"normal-cone-partition"};
    return inst;
}

CatalogInstance vi_from_projection() {
    CatalogInstance inst{"vi-from-projection", unit_square(), InstanceKind::vi};
    inst.op.kind = OperatorSpec::Kind::shift_to;
    inst.op.vec = {2, 2};
    inst.op.label = "x - (2,2)";
    inst.extra_candidates = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1},
                             {0, 0}, {0.5, 0.5}, {-0.5, 0.3}, {1, 0}};
    inst.expected.points = {{1, 1}};
    inst.property_tags = {"vi-projection-consistency"};
    return inst;
}

}  // namespace

std::vector<CatalogInstance> catalog() {
    std::vector<CatalogInstance> out;
    out.push_back(square_partition());
    out.push_back(square_projection_corner());
    out.push_back(square_projection_edge());
    out.push_back(interval_x2());
    out.push_back(interval_max0x());
    out.push_back(open_interval_neg_x2());
    out.push_back(square_farthest());
    out.push_back(disk_exposed_reduction());
    out.push_back(vi_from_projection());
    out.push_back(square_partition_figure());
    return out;
}

}  // namespace eqgeo
