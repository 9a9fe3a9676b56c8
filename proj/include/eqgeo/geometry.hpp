#pragma once

#include <cstddef>
#include <vector>

#include "eqgeo/convex_body.hpp"
#include "eqgeo/projection.hpp"
#include "eqgeo/tolerances.hpp"
#include "eqgeo/vec.hpp"

namespace eqgeo {

// Generators that are not convex combinations of the others, decided by
// distance-to-hull > tol_feas. Preserves generator order; the hull of the
// result equals the hull of the input. OpenMP-parallel over generators.
std::vector<Point> extreme_points(const ConvexBody& body, double tol_feas = kTolFeas);

// For a polytope: its extreme points (count ignored; every vertex of a
// V-polytope is exposed). For a ball: `count` points spread uniformly over
// the sphere, deterministic for n <= 3, seeded Gaussian directions above.
std::vector<Point> exposed_points_sample(const ConvexBody& body, std::size_t count,
                                         unsigned long long seed = kDefaultSeed);

// True iff <x - base, dir> <= tol for every x in the body. Polytope: decided
// on generators (the map is affine in x). Ball: dir must be an outward
// normal at a boundary base, or ~0. Throws if base is not in the body.
bool normal_cone_contains(const ConvexBody& body, const Point& base, const Point& dir,
                          double tol = kTolFeas);

// Normal-cone membership restricted to the unit sphere.
bool gauss_map_contains(const ConvexBody& body, const Point& base, const Point& dir,
                        double tol = kTolFeas);

// The unique boundary point x with query in x + N(x) \ {0}; the cell base of
// the partition of R^n minus the body. Throws if query lies in the body.
Point locate_partition_cell(const ConvexBody& body, const Point& query,
                            double tol_feas = kTolFeas);

struct FarthestResult {
    std::vector<Point> points;
    // Set when the query is a ball's center: the argmax is the whole sphere,
    // represented by a symmetric sample.
    bool degenerate = false;
};

// Points of the body farthest from the query. Polytope: the extreme points
// attaining the max distance within tol_eq. Ball: the antipodal boundary
// point.
FarthestResult farthest_points(const ConvexBody& body, const Point& query,
                               double tol_eq = kTolEq);

// True iff p is the unique maximizer of some linear functional among the
// body's generators (polytope) or lies on the sphere (ball).
bool is_exposed_point(const ConvexBody& body, const Point& p, double tol = kTolFeas);

// Normal cone attached at a base point; owns a copy of its body.
class Cone {
public:
    Cone(ConvexBody body, Point base, double tol_feas = kTolFeas);

    const Point& base() const { return base_; }
    const ConvexBody& body() const { return body_; }
    bool contains(const Point& dir, double tol = kTolFeas) const {
        return normal_cone_contains(body_, base_, dir, tol);
    }

private:
    ConvexBody body_;
    Point base_;
};

namespace serial {
std::vector<Point> extreme_points(const ConvexBody& body, double tol_feas = kTolFeas);
}

}  // namespace eqgeo
