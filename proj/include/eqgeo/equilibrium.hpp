#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "eqgeo/bifunction.hpp"
#include "eqgeo/convex_body.hpp"
#include "eqgeo/tolerances.hpp"
#include "eqgeo/vec.hpp"

namespace eqgeo {

// Tester set a solution was checked against.
enum class Reduction { none, generators, extreme, exposed };

const char* to_string(Reduction r);

// Result of an equilibrium scan. solutions keeps candidate order;
// max_violation is the largest g(x0, x) over returned solutions x0 and
// checked testers x (0 when that product is empty), so it is <= tol by
// construction. forced_unsound marks a reduction that ran without its
// declared-property precondition.
struct EqReport {
    std::vector<Point> solutions;
    Reduction reduction_used = Reduction::none;
    std::size_t checked_set_size = 0;
    double max_violation = 0.0;
    bool forced_unsound = false;
    // The scanned candidate list, kept so comparisons can verify that two
    // reports answer the same question.
    std::vector<Point> candidates;
};

// An equilibrium problem: find the candidates x0 with g(x0, x) <= tol for
// every tester x. The constraint is either an explicit finite tester list or
// a body whose testers come from a reduction.
struct EqProblem {
    Bifunction g;
    std::vector<Point> candidates;
    std::variant<std::vector<Point>, ConvexBody> constraint;
    double tol = kTolEq;
};

// { x0 in candidates | g(x0, x) <= tol for all x in testers }. Empty testers
// accept every candidate. Throws EvaluationError naming the first offending
// (candidate, tester) pair in scan order if g returns a non-finite value.
// OpenMP-parallel over candidates.
EqReport eq_set(const Bifunction& g, const std::vector<Point>& candidates,
                const std::vector<Point>& testers, double tol = kTolEq);

// Equilibrium over a body, checking only the reduced tester set:
//   generators  the polytope's generator list (needs quasiconvexity in v)
//   extreme     extreme points; a ball's extreme set is its whole sphere,
//               represented by the deterministic sample
//   exposed     exposed points (additionally needs lsc in v)
// Throws ReductionUnsound when a declared flag is missing, unless
// force_unsound is set; forced runs are marked in the report.
EqReport eq_reduced(const Bifunction& g, const std::vector<Point>& candidates,
                    const ConvexBody& S, Reduction mode, double tol = kTolEq,
                    bool force_unsound = false,
                    std::size_t exposed_count = kExposedSampleCount);

// Argmin of a quasiconcave objective, decided against extreme points only.
// minima_agree records whether the candidate minimum reproduces the
// extreme-point minimum within tol, the identity that justifies the
// reduction (it requires candidates dense enough to reach the minimizer).
struct ArgminReport {
    EqReport eq;
    double candidate_min = 0.0;
    double vertex_min = 0.0;
    bool minima_agree = false;
};

ArgminReport argmin_quasiconcave(const std::function<double(const Point&)>& f,
                                 const ConvexBody& S, const std::vector<Point>& candidates,
                                 double tol = kTolEq);

// { x0 in candidates | <T(x0), v - x0> >= -tol for all extreme v }. The gap
// map v -> <T(u), u - v> is affine in v, so the vertex check decides the
// inequality over the whole body; no declaration is needed.
EqReport solve_vi(const std::function<Point(const Point&)>& T, const ConvexBody& S,
                  const std::vector<Point>& candidates, double tol = kTolEq);

// Sampled falsification of quasiconvexity of h on S: random segment
// endpoints, uniform t grid. A pass is a certificate, not a proof.
struct QuasiconvexWitness {
    Point v1, v2;
    double t = 0.0;
    double value = 0.0;    // h((1-t) v1 + t v2)
    double end_max = 0.0;  // max{h(v1), h(v2)}
};

struct QuasiconvexCheck {
    bool passed = true;
    std::optional<QuasiconvexWitness> witness;
};

QuasiconvexCheck check_quasiconvex(const std::function<double(const Point&)>& h,
                                   const ConvexBody& S, std::size_t segment_samples,
                                   std::size_t t_samples,
                                   unsigned long long seed = kDefaultSeed,
                                   double tol = kTolEq);

namespace serial {
// Plain-loop reference used by tests and the benchmark.
EqReport eq_set(const Bifunction& g, const std::vector<Point>& candidates,
                const std::vector<Point>& testers, double tol = kTolEq);
}

}  // namespace eqgeo
