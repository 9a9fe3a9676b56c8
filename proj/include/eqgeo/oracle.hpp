#pragma once

#include <cstddef>
#include <vector>

#include "eqgeo/convex_body.hpp"
#include "eqgeo/equilibrium.hpp"
#include "eqgeo/tolerances.hpp"
#include "eqgeo/vec.hpp"

namespace eqgeo {

// Dense sample of a body: the bounding-box lattice of the given spacing,
// anchored at the box's minimum corner, filtered by membership. Points are
// in lexicographic order.
struct Grid {
    std::vector<Point> points;
    double resolution = 0.0;
    ConvexBody body;
};

// Throws InputError when resolution <= 0, dim > 4 (lattice size guard), or
// the filtered lattice is empty. Membership filtering is OpenMP-parallel.
Grid make_grid(const ConvexBody& S, double resolution, double tol_feas = kTolFeas);

// Ground-truth equilibrium: eq_set against the dense grid of S. No
// reduction; this is the reference every reduction is compared to.
EqReport brute_eq(const Bifunction& g, const std::vector<Point>& candidates,
                  const ConvexBody& S, double resolution, double tol = kTolEq);

// Set comparison of two reports over the same candidate list. Matching is
// at Euclidean tolerance tol; hausdorff_gap is 0 when both solution sets are
// empty and +inf when exactly one is.
struct ComparisonReport {
    bool agree = false;
    std::vector<Point> only_in_reduced;
    std::vector<Point> only_in_brute;
    double hausdorff_gap = 0.0;
};

ComparisonReport compare(const EqReport& reduced, const EqReport& brute,
                         double tol = kPointMatchTol);

namespace serial {
// Plain-loop reference used by tests and the benchmark.
Grid make_grid(const ConvexBody& S, double resolution, double tol_feas = kTolFeas);
}

}  // namespace eqgeo
