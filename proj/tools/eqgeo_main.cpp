// eqgeo: solve, verify, and draw convex-geometry equilibrium instances.
//
// Exit codes: 0 success (for `verify`: the agreement matched what was
// expected), 1 input or gating error, 2 solver non-convergence.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eqgeo/equilibrium.hpp"
#include "eqgeo/errors.hpp"
#include "eqgeo/figure.hpp"
#include "eqgeo/geometry.hpp"
#include "eqgeo/instance_io.hpp"
#include "eqgeo/instances.hpp"
#include "eqgeo/oracle.hpp"
#include "eqgeo/projection.hpp"

using nlohmann::json;
using namespace eqgeo;

namespace {

struct Flags {
    double tol = -1.0;         // equilibrium slack override; < 0 keeps the file's
    double resolution = -1.0;  // tester-grid override; < 0 keeps the file's
    unsigned long long seed = kDefaultSeed;
    std::string mode;  // generators | extreme | exposed | brute; empty keeps the file's plan
    bool force_unsound = false;
    bool expect_disagree = false;
    std::string out;
};

json point_json(const Point& p) { return json(p); }

json points_json(const std::vector<Point>& pts) {
    json arr = json::array();
    for (const auto& p : pts) arr.push_back(point_json(p));
    return arr;
}

json eq_report_json(const EqReport& rep) {
    json j;
    j["solutions"] = points_json(rep.solutions);
    j["reduction_used"] = to_string(rep.reduction_used);
    j["checked_set_size"] = rep.checked_set_size;
    j["max_violation"] = rep.max_violation;
    j["forced_unsound"] = rep.forced_unsound;
    j["candidate_count"] = rep.candidates.size();
    return j;
}

// The reduction plan for an equilibrium run. An explicit --mode replaces the
// file's plan entirely, so forcing past the gate must then also be explicit.
struct Plan {
    bool brute = false;
    Reduction mode = Reduction::none;
    bool force = false;
};

Plan reduction_plan(const CatalogInstance& inst, const Flags& flags, Reduction fallback) {
    Plan plan;
    if (!flags.mode.empty()) {
        if (flags.mode == "brute") {
            plan.brute = true;
        } else if (flags.mode == "generators") {
            plan.mode = Reduction::generators;
        } else if (flags.mode == "extreme") {
            plan.mode = Reduction::extreme;
        } else if (flags.mode == "exposed") {
            plan.mode = Reduction::exposed;
        } else {
            throw InputError("unknown mode '" + flags.mode +
                             "' (expected generators, extreme, exposed, or brute)");
        }
        plan.force = flags.force_unsound;
        return plan;
    }
    plan.mode = inst.mode != Reduction::none ? inst.mode : fallback;
    plan.brute = plan.mode == Reduction::none;
    plan.force = inst.force_unsound || flags.force_unsound;
    return plan;
}

double tester_resolution(const CatalogInstance& inst, const Flags& flags,
                         double fallback = 0.05) {
    if (flags.resolution > 0.0) return flags.resolution;
    if (inst.tester_resolution > 0.0) return inst.tester_resolution;
    if (inst.candidate_resolution > 0.0) return inst.candidate_resolution;
    return fallback;
}

std::vector<Point> candidates_or_grid(const CatalogInstance& inst, double resolution) {
    auto candidates = instance_candidates(inst);
    if (candidates.empty()) candidates = make_grid(inst.body, resolution).points;
    return candidates;
}

// The equilibrium formulation each instance kind verifies against.
Bifunction instance_bifunction(const CatalogInstance& inst) {
    switch (inst.kind) {
        case InstanceKind::equilibrium:
        case InstanceKind::exposed_reduction:
            return inst.bifunction.instantiate();
        case InstanceKind::argmin:
        case InstanceKind::open_ladder: {
            BifunctionSpec spec;
            spec.kind = BifunctionSpec::Kind::objective_difference;
            spec.f = inst.objective;
            spec.label = inst.objective.label;
            return spec.instantiate();
        }
        case InstanceKind::farthest: {
            // Farthest from xstar = minimizer of the concave -dist(., xstar).
            BifunctionSpec spec;
            spec.kind = BifunctionSpec::Kind::objective_difference;
            spec.f.kind = ObjectiveSpec::Kind::neg_distance_to;
            spec.f.anchor = inst.xstar;
            spec.f.quasiconcave = true;
            spec.f.usc = true;
            spec.f.label = "-dist(x, " + format_point(inst.xstar) + ")";
            spec.label = spec.f.label;
            return spec.instantiate();
        }
        case InstanceKind::projection: {
            BifunctionSpec spec;
            spec.kind = BifunctionSpec::Kind::projection_gap;
            spec.xstar = inst.xstar;
            spec.label = "projection gap at " + format_point(inst.xstar);
            return spec.instantiate();
        }
        case InstanceKind::vi: {
            BifunctionSpec spec;
            spec.kind = BifunctionSpec::Kind::vi_gap;
            spec.op = inst.op;
            spec.label = "vi gap of " + inst.op.label;
            return spec.instantiate();
        }
        default:
            throw InputError(std::string("instance kind '") + to_string(inst.kind) +
                             "' has no equilibrium formulation");
    }
}

json solve_figure(const InstanceFile& file, const Flags& flags) {
    FigureOptions opt;
    opt.exterior_samples = file.figure_samples;
    opt.box_scale = file.figure_box_scale;
    opt.seed = flags.seed;
    const Figure fig = partition_figure(file.instance.body, opt);

    const std::string base = flags.out.empty() ? file.instance.id : flags.out;
    write_figure(fig, base + ".svg", base + ".csv");

    json j;
    j["svg"] = base + ".svg";
    j["csv"] = base + ".csv";
    j["rows"] = fig.rows.size();
    j["seed"] = opt.seed;
    return j;
}

json solve_result(const InstanceFile& file, const Flags& flags) {
    const CatalogInstance& inst = file.instance;
    const double tol_eq = flags.tol > 0.0 ? flags.tol : file.tolerances.eq;
    json j;

    switch (inst.kind) {
        case InstanceKind::projection: {
            const auto pr = project(inst.body, inst.xstar, file.tolerances.feas);
            j["solutions"] = points_json({pr.point});
            j["residual"] = pr.residual;
            j["iterations"] = pr.iterations;
            if (!contains(inst.body, inst.xstar))
                j["cell_base"] = point_json(locate_partition_cell(inst.body, inst.xstar));
            break;
        }
        case InstanceKind::farthest: {
            const auto fr = farthest_points(inst.body, inst.xstar, tol_eq);
            j["solutions"] = points_json(fr.points);
            j["degenerate"] = fr.degenerate;
            break;
        }
        case InstanceKind::partition_probes: {
            json rows = json::array();
            bool all_match = true;
            for (const auto& probe : inst.cone_probes) {
                const bool got = normal_cone_contains(inst.body, probe.base, probe.dir,
                                                      file.tolerances.feas);
                all_match = all_match && got == probe.inside;
                rows.push_back({{"base", point_json(probe.base)},
                                {"dir", point_json(probe.dir)},
                                {"inside", got},
                                {"expected", probe.inside}});
            }
            j["probes"] = std::move(rows);
            j["all_match"] = all_match;
            break;
        }
        case InstanceKind::equilibrium:
        case InstanceKind::exposed_reduction: {
            const Bifunction g = instance_bifunction(inst);
            const auto candidates = instance_candidates(inst);
            const Plan plan = reduction_plan(
                inst, flags,
                inst.kind == InstanceKind::exposed_reduction ? Reduction::exposed
                                                             : Reduction::none);
            EqReport rep;
            if (plan.brute) {
                rep = brute_eq(g, candidates, inst.body, tester_resolution(inst, flags), tol_eq);
            } else {
                rep = eq_reduced(g, candidates, inst.body, plan.mode, tol_eq, plan.force,
                                 inst.exposed_count);
            }
            j = eq_report_json(rep);
            break;
        }
        case InstanceKind::argmin: {
            if (!inst.objective.quasiconcave)
                throw InputError("argmin needs an objective declared quasiconcave; '" +
                                 inst.objective.label + "' is not");
            const ObjectiveSpec f = inst.objective;
            const auto candidates = candidates_or_grid(inst, tester_resolution(inst, flags));
            const auto rep = argmin_quasiconcave([&f](const Point& p) { return f(p); },
                                                 inst.body, candidates, tol_eq);
            j = eq_report_json(rep.eq);
            j["candidate_min"] = rep.candidate_min;
            j["vertex_min"] = rep.vertex_min;
            j["minima_agree"] = rep.minima_agree;
            break;
        }
        case InstanceKind::vi: {
            const OperatorSpec T = inst.op;
            const auto candidates = candidates_or_grid(inst, tester_resolution(inst, flags));
            const EqReport rep = solve_vi([&T](const Point& p) { return T(p); }, inst.body,
                                          candidates, tol_eq);
            j = eq_report_json(rep);
            if (T.kind == OperatorSpec::Kind::shift_to)
                j["projection"] = point_json(project(inst.body, T.vec).point);
            break;
        }
        case InstanceKind::open_ladder: {
            const Bifunction g = instance_bifunction(inst);
            const ObjectiveSpec f = inst.objective;
            json levels = json::array();
            bool empty_everywhere = true;
            double h = inst.ladder_base;
            for (int level = 0; level < inst.ladder_levels; ++level, h /= 2.0) {
                const auto candidates = open_interval_grid(h);
                const EqReport rep = eq_set(g, candidates, open_interval_grid(h / 2.0), tol_eq);
                const EqReport vs_extreme = eq_set(g, candidates, {}, tol_eq);
                double level_min = std::numeric_limits<double>::infinity();
                for (const auto& c : candidates) level_min = std::min(level_min, f(c));
                empty_everywhere = empty_everywhere && rep.solutions.empty();
                levels.push_back({{"resolution", h},
                                  {"eq_size", rep.solutions.size()},
                                  {"min_value", level_min},
                                  {"vs_extreme_size", vs_extreme.solutions.size()},
                                  {"candidate_count", candidates.size()}});
            }
            j["levels"] = std::move(levels);
            j["empty_at_every_level"] = empty_everywhere;
            break;
        }
        case InstanceKind::partition_figure:
            j = solve_figure(file, flags);
            break;
    }
    return j;
}

struct VerifyOutcome {
    json report;
    bool ok = false;  // agreement (and cross-consistency where defined)
};

VerifyOutcome verify_result(const InstanceFile& file, const Flags& flags) {
    const CatalogInstance& inst = file.instance;
    const double tol_eq = flags.tol > 0.0 ? flags.tol : file.tolerances.eq;

    EqReport reduced, brute;
    bool cross_consistent = true;
    json extra;

    if (inst.kind == InstanceKind::open_ladder) {
        // The comparison the ladder demonstrates: testers from ext of the
        // open interval (there are none) against a strictly finer grid.
        const Bifunction g = instance_bifunction(inst);
        const auto candidates = open_interval_grid(inst.ladder_base);
        reduced = eq_set(g, candidates, {}, tol_eq);
        reduced.reduction_used = Reduction::extreme;
        brute = eq_set(g, candidates, open_interval_grid(inst.ladder_base / 2.0), tol_eq);
    } else if (inst.kind == InstanceKind::partition_probes ||
               inst.kind == InstanceKind::partition_figure) {
        throw InputError(std::string("verify needs a problem with a solution set; '") +
                         to_string(inst.kind) + "' has none");
    } else {
        const Bifunction g = instance_bifunction(inst);
        const double res = tester_resolution(inst, flags);
        const auto candidates = candidates_or_grid(inst, res);
        const Plan plan = reduction_plan(inst, flags, Reduction::extreme);
        if (plan.brute)
            throw InputError("verify compares a reduction against the brute oracle; "
                             "pick --mode generators, extreme, or exposed");
        reduced = eq_reduced(g, candidates, inst.body, plan.mode, tol_eq, plan.force,
                             inst.exposed_count);
        brute = brute_eq(g, candidates, inst.body, res, tol_eq);

        if (inst.kind == InstanceKind::vi && inst.op.kind == OperatorSpec::Kind::shift_to) {
            // T(x) = x - xstar makes the VI the projection problem: every
            // agreed solution must be the projection point.
            const auto pr = project(inst.body, inst.op.vec);
            for (const auto& s : reduced.solutions)
                if (distance(s, pr.point) > 10.0 * tol_eq) cross_consistent = false;
            extra["projection"] = point_json(pr.point);
        }
        if (inst.kind == InstanceKind::projection) {
            const auto pr = project(inst.body, inst.xstar);
            for (const auto& s : reduced.solutions)
                if (distance(s, pr.point) > 10.0 * tol_eq) cross_consistent = false;
            extra["projection"] = point_json(pr.point);
        }
    }

    const ComparisonReport cmp = compare(reduced, brute);

    json j;
    j["agree"] = cmp.agree;
    j["hausdorff_gap"] = cmp.hausdorff_gap;
    j["only_in_reduced"] = points_json(cmp.only_in_reduced);
    j["only_in_brute"] = points_json(cmp.only_in_brute);
    j["reduced"] = eq_report_json(reduced);
    j["brute_size"] = brute.solutions.size();
    j["cross_consistent"] = cross_consistent;
    j["expect_disagree"] = flags.expect_disagree;
    for (auto& [k, v] : extra.items()) j[k] = v;

    return {std::move(j), cmp.agree && cross_consistent};
}

void emit(const json& report, const std::string& out) {
    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!out.empty()) {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw InputError("cannot write report file '" + out + "'");
        f << text;
    }
}

int run(const std::string& cmd, const std::string& path, const Flags& flags) {
    const InstanceFile file = load_instance_file(path);

    json report;
    report["version"] = 1;
    report["id"] = file.instance.id;
    report["problem"] = to_string(file.instance.kind);
    report["tolerances"] = {{"feas", file.tolerances.feas},
                            {"pt", file.tolerances.pt},
                            {"eq", flags.tol > 0.0 ? flags.tol : file.tolerances.eq}};
    report["seed"] = flags.seed;

    int code = 0;
    if (cmd == "solve") {
        report["result"] = solve_result(file, flags);
    } else if (cmd == "verify") {
        VerifyOutcome v = verify_result(file, flags);
        report["result"] = std::move(v.report);
        code = v.ok != flags.expect_disagree ? 0 : 1;
        report["outcome"] = code == 0 ? "as-expected" : "not-as-expected";
    } else {
        if (!file.instance.body.is_polytope() || file.instance.body.dim() != 2)
            throw InputError("figures need a 2-D polytope body");
        report["result"] = solve_figure(file, flags);
    }

    emit(report, cmd == "figure" ? std::string{} : flags.out);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Convex-geometry equilibrium toolkit"};
    app.require_subcommand(1);

    Flags flags;
    std::string path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", path, "instance file (JSON)")->required();
        sub->add_option("--tol", flags.tol, "equilibrium inequality slack");
        sub->add_option("--seed", flags.seed, "seed for sampled sets (figure scatter, sphere)");
        sub->add_option("--resolution", flags.resolution, "tester grid spacing for brute scans");
        sub->add_option("--mode", flags.mode,
                        "tester set: generators, extreme, exposed, or brute")
            ->check(CLI::IsMember({"generators", "extreme", "exposed", "brute"}));
        sub->add_flag("--force-unsound", flags.force_unsound,
                      "run a reduction past its declared-property gate (marked in the report)");
        sub->add_option("--out", flags.out, "report file; for figures, the output base name");
    };

    CLI::App* solve = app.add_subcommand("solve", "run an instance's problem and report");
    add_common(solve);
    CLI::App* verify =
        app.add_subcommand("verify", "compare a reduction against the brute-force oracle");
    add_common(verify);
    verify->add_flag("--expect-disagree", flags.expect_disagree,
                     "exit 0 when the comparison disagrees (catalog counterexamples)");
    CLI::App* figure =
        app.add_subcommand("figure", "draw the partition of the plane outside a 2-D polytope");
    add_common(figure);

    CLI11_PARSE(app, argc, argv);

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return run(cmd, path, flags);
    } catch (const NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
