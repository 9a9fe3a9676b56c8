#include "eqgeo/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eqgeo/errors.hpp"
#include "eqgeo/geometry.hpp"
#include "eqgeo/rng.hpp"

namespace eqgeo {

const char* to_string(Reduction r) {
    switch (r) {
        case Reduction::none: return "none";
        case Reduction::generators: return "generators";
        case Reduction::extreme: return "extreme";
        case Reduction::exposed: return "exposed";
    }
    return "none";
}

namespace {

// Per-candidate scan outcome. A candidate is accepted when no tester pushes
// g above tol; worst is only meaningful for accepted candidates (rejected
// scans stop early).
struct ScanRow {
    signed char accepted = 0;
    signed char bad_value = 0;  // non-finite g encountered
    double worst = -std::numeric_limits<double>::infinity();
};

ScanRow scan_candidate(const Bifunction& g, const Point& u, const std::vector<Point>& testers,
                       double tol) {
    ScanRow row;
    row.accepted = 1;
    for (const auto& x : testers) {
        const double val = g.eval(u, x);
        if (!std::isfinite(val)) {
            row.bad_value = 1;
            row.accepted = 0;
            return row;
        }
        if (val > row.worst) row.worst = val;
        if (val > tol) {
            row.accepted = 0;
            return row;
        }
    }
    return row;
}

[[noreturn]] void throw_bad_value(const Bifunction& g, const Point& u,
                                  const std::vector<Point>& testers) {
    for (const auto& x : testers) {
        if (!std::isfinite(g.eval(u, x)))
            throw EvaluationError("bifunction '" + g.label + "' returned a non-finite value at u=" +
                                  format_point(u) + ", v=" + format_point(x));
    }
    throw EvaluationError("bifunction '" + g.label + "' returned a non-finite value at u=" +
                          format_point(u));
}

EqReport assemble_report(const Bifunction& g, const std::vector<Point>& candidates,
                         const std::vector<Point>& testers, const std::vector<ScanRow>& rows) {
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (rows[i].bad_value) throw_bad_value(g, candidates[i], testers);

    EqReport report;
    report.checked_set_size = testers.size();
    report.candidates = candidates;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!rows[i].accepted) continue;
        report.solutions.push_back(candidates[i]);
        worst = std::max(worst, rows[i].worst);
    }
    report.max_violation = std::isfinite(worst) ? worst : 0.0;
    return report;
}

}  // namespace

EqReport eq_set(const Bifunction& g, const std::vector<Point>& candidates,
                const std::vector<Point>& testers, double tol) {
    if (candidates.empty()) throw InputError("eq_set: candidate list is empty");
    if (!g.eval) throw InputError("eq_set: bifunction has no evaluator");

    std::vector<ScanRow> rows(candidates.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (long long i = 0; i < static_cast<long long>(candidates.size()); ++i)
        rows[i] = scan_candidate(g, candidates[i], testers, tol);

    return assemble_report(g, candidates, testers, rows);
}

namespace serial {
EqReport eq_set(const Bifunction& g, const std::vector<Point>& candidates,
                const std::vector<Point>& testers, double tol) {
    if (candidates.empty()) throw InputError("eq_set: candidate list is empty");
    if (!g.eval) throw InputError("eq_set: bifunction has no evaluator");

    std::vector<ScanRow> rows(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i)
        rows[i] = scan_candidate(g, candidates[i], testers, tol);

    return assemble_report(g, candidates, testers, rows);
}
}  // namespace serial

EqReport eq_reduced(const Bifunction& g, const std::vector<Point>& candidates,
                    const ConvexBody& S, Reduction mode, double tol, bool force_unsound,
                    std::size_t exposed_count) {
    if (mode == Reduction::none)
        throw InputError("eq_reduced: choose generators, extreme, or exposed");

    bool missing_flag = false;
    std::string what;
    if (!g.declared_quasiconvex_2nd) {
        missing_flag = true;
        what = "quasiconvex in the second argument";
    } else if (mode == Reduction::exposed && !g.declared_lsc_2nd) {
        missing_flag = true;
        what = "lower semicontinuous in the second argument";
    }
    if (missing_flag && !force_unsound)
        throw ReductionUnsound("reduction unsound without declared property: bifunction '" +
                               g.label + "' is not declared " + what);

    std::vector<Point> testers;
    switch (mode) {
        case Reduction::generators:
            if (!S.is_polytope())
                throw InputError("eq_reduced: generator reduction requires a polytope");
            testers = S.as_polytope().generators;
            break;
        case Reduction::extreme:
            // A ball's extreme set is its whole sphere; fall through to the
            // deterministic sample in that case.
            testers = S.is_polytope() ? extreme_points(S)
                                      : exposed_points_sample(S, exposed_count);
            break;
        case Reduction::exposed:
            testers = exposed_points_sample(S, exposed_count);
            break;
        case Reduction::none:
            break;
    }

    EqReport report = eq_set(g, candidates, testers, tol);
    report.reduction_used = mode;
    report.forced_unsound = missing_flag;
    return report;
}

ArgminReport argmin_quasiconcave(const std::function<double(const Point&)>& f,
                                 const ConvexBody& S, const std::vector<Point>& candidates,
                                 double tol) {
    if (candidates.empty()) throw InputError("argmin_quasiconcave: candidate list is empty");

    const std::vector<Point> verts = S.is_polytope()
                                         ? extreme_points(S)
                                         : exposed_points_sample(S, kExposedSampleCount);

    auto value_at = [&](const Point& p) {
        const double val = f(p);
        if (!std::isfinite(val))
            throw EvaluationError("objective returned a non-finite value at " + format_point(p));
        return val;
    };

    double vertex_min = std::numeric_limits<double>::infinity();
    for (const auto& v : verts) vertex_min = std::min(vertex_min, value_at(v));

    ArgminReport out;
    out.eq.reduction_used = S.is_polytope() ? Reduction::extreme : Reduction::exposed;
    out.eq.checked_set_size = verts.size();
    out.eq.candidates = candidates;
    out.vertex_min = vertex_min;

    double candidate_min = std::numeric_limits<double>::infinity();
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& u : candidates) {
        const double val = value_at(u);
        candidate_min = std::min(candidate_min, val);
        if (val <= vertex_min + tol) {
            out.eq.solutions.push_back(u);
            worst = std::max(worst, val - vertex_min);
        }
    }
    out.eq.max_violation = std::isfinite(worst) ? worst : 0.0;
    out.candidate_min = candidate_min;
    out.minima_agree = std::fabs(candidate_min - vertex_min) <= tol;
    return out;
}

EqReport solve_vi(const std::function<Point(const Point&)>& T, const ConvexBody& S,
                  const std::vector<Point>& candidates, double tol) {
    if (candidates.empty()) throw InputError("solve_vi: candidate list is empty");

    const std::vector<Point> verts = S.is_polytope()
                                         ? extreme_points(S)
                                         : exposed_points_sample(S, kExposedSampleCount);

    // Cache T so the tester scan is a plain dot-product sweep.
    std::vector<Point> field(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        field[i] = T(candidates[i]);
        check_dim(field[i], S.dim(), "solve_vi: operator value");
        if (!all_finite(field[i]))
            throw EvaluationError("operator returned a non-finite value at " +
                                  format_point(candidates[i]));
    }

    EqReport report;
    report.reduction_used = S.is_polytope() ? Reduction::extreme : Reduction::exposed;
    report.checked_set_size = verts.size();
    report.candidates = candidates;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const Point& u = candidates[i];
        double row_worst = -std::numeric_limits<double>::infinity();
        bool ok = true;
        for (const auto& v : verts) {
            const double val = dot(field[i], sub(u, v));  // <T(u), u - v> <= tol
            row_worst = std::max(row_worst, val);
            if (val > tol) {
                ok = false;
                break;
            }
        }
        if (ok) {
            worst = std::max(worst, row_worst);
            report.solutions.push_back(u);
        }
    }
    report.max_violation = std::isfinite(worst) ? worst : 0.0;
    return report;
}

namespace {

Point sample_in_body(const ConvexBody& S, Rng& rng) {
    if (S.is_polytope()) {
        const auto& gens = S.as_polytope().generators;
        std::vector<double> w(gens.size());
        double total = 0.0;
        for (auto& wi : w) {
            double u = rng.uniform();
            while (u <= 0.0) u = rng.uniform();
            wi = -std::log(u);
            total += wi;
        }
        Point p(S.dim(), 0.0);
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t k = 0; k < p.size(); ++k) p[k] += (w[i] / total) * gens[i][k];
        return p;
    }
    const Ball& b = S.as_ball();
    const Point dir = rng.unit_vector(S.dim());
    const double r = b.radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(S.dim()));
    Point p(b.center);
    for (std::size_t k = 0; k < p.size(); ++k) p[k] += r * dir[k];
    return p;
}

}  // namespace

QuasiconvexCheck check_quasiconvex(const std::function<double(const Point&)>& h,
                                   const ConvexBody& S, std::size_t segment_samples,
                                   std::size_t t_samples, unsigned long long seed, double tol) {
    if (segment_samples < 1 || t_samples < 1)
        throw InputError("check_quasiconvex: sample counts must be >= 1");

    Rng rng(seed);
    QuasiconvexCheck out;
    for (std::size_t s = 0; s < segment_samples; ++s) {
        const Point v1 = sample_in_body(S, rng);
        const Point v2 = sample_in_body(S, rng);
        const double end_max = std::max(h(v1), h(v2));
        for (std::size_t j = 0; j < t_samples; ++j) {
            const double t = t_samples == 1
                                 ? 0.5
                                 : static_cast<double>(j) / static_cast<double>(t_samples - 1);
            const Point mid = lerp(v1, v2, t);
            const double val = h(mid);
            if (val > end_max + tol) {
                out.passed = false;
                out.witness = QuasiconvexWitness{v1, v2, t, val, end_max};
                return out;
            }
        }
    }
    return out;
}

}  // namespace eqgeo
