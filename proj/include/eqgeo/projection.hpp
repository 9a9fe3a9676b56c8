#pragma once

#include <cstddef>
#include <vector>

#include "eqgeo/convex_body.hpp"
#include "eqgeo/tolerances.hpp"
#include "eqgeo/vec.hpp"

namespace eqgeo {

// Metric projection onto a convex body.
//
// point     the unique nearest point of the body
// residual  certificate value: for a polytope, max(0, max_v <v - p, q - p>)
//           over the generators v (affine in the first slot, so the maximum
//           over the hull is attained on the generator set); for a ball the
//           analytic formula makes it exactly 0
// iterations  solver cycles spent (0 for the analytic ball path)
struct ProjectionResult {
    Point point;
    double residual = 0.0;
    std::size_t iterations = 0;
};

// Nearest point of `body` to `query`. The polytope path runs a Wolfe-style
// min-norm-point / active-set iteration over the generator set and stops as
// soon as the generator certificate drops below tol_feas. Throws
// NonConvergence (carrying the best iterate) after max_iter cycles;
// max_iter = 0 means the default 10 * |generators| * n.
ProjectionResult project(const ConvexBody& body, const Point& query,
                         double tol_feas = kTolFeas, std::size_t max_iter = 0);

// Certificate value of a claimed projection point: max over generators v of
// <v - p, q - p> (polytope), or the sphere-supremum for a ball. Nonpositive
// within tol_feas iff p is the metric projection of q.
double projection_certificate(const ConvexBody& body, const Point& p, const Point& query);

// Nearest point of conv(generators) without constructing a validated body.
// Callers guarantee a nonempty list with consistent dimensions; duplicates
// are harmless here. Kernel shared by extreme-point pruning and the
// exposedness test.
ProjectionResult project_onto_hull(const std::vector<Point>& generators, const Point& query,
                                   double tol_feas = kTolFeas, std::size_t max_iter = 0);

// Membership at tolerance: dist(p, body) <= tol. Polytope membership is
// decided through project; ball membership analytically.
bool contains(const ConvexBody& body, const Point& p, double tol = kTolFeas);

// Projects every query point. OpenMP-parallel over queries; results are
// identical to the serial reference (each query is solved independently).
std::vector<ProjectionResult> batch_project(const ConvexBody& body,
                                            const std::vector<Point>& queries,
                                            double tol_feas = kTolFeas,
                                            std::size_t max_iter = 0);

namespace serial {
// Plain-loop reference used by tests and the benchmark.
std::vector<ProjectionResult> batch_project(const ConvexBody& body,
                                            const std::vector<Point>& queries,
                                            double tol_feas = kTolFeas,
                                            std::size_t max_iter = 0);
}  // namespace serial

}  // namespace eqgeo
