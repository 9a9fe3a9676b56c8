#include "eqgeo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eqgeo/errors.hpp"
#include "eqgeo/projection.hpp"

namespace eqgeo {

namespace {

// Lattice of the bounding box in lexicographic order. Coordinates are
// lo[k] + j * resolution (one multiply, no accumulation drift).
std::vector<Point> bounding_lattice(const ConvexBody& S, double resolution) {
    const auto [lo, hi] = S.bounding_box();
    const std::size_t n = S.dim();

    std::vector<std::size_t> counts(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double span = hi[k] - lo[k];
        counts[k] = static_cast<std::size_t>(std::floor(span / resolution + 1e-9)) + 1;
    }

    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (counts[k] > 0 && total > (1u << 28) / counts[k])
            throw InputError("make_grid: lattice would exceed the size guard");
        total *= counts[k];
    }

    std::vector<Point> lattice;
    lattice.reserve(total);
    std::vector<std::size_t> idx(n, 0);
    Point p(n);
    while (true) {
        for (std::size_t k = 0; k < n; ++k)
            p[k] = lo[k] + static_cast<double>(idx[k]) * resolution;
        lattice.push_back(p);
        std::size_t k = n;
        while (k-- > 0) {
            if (++idx[k] < counts[k]) break;
            idx[k] = 0;
            if (k == 0) return lattice;
        }
    }
}

Grid filter_lattice(const ConvexBody& S, double resolution, double tol_feas, bool parallel) {
    if (!(resolution > 0.0)) throw InputError("make_grid: resolution must be positive");
    if (S.dim() > 4)
        throw InputError("make_grid: dimension " + std::to_string(S.dim()) +
                         " exceeds the n <= 4 lattice guard");

    const std::vector<Point> lattice = bounding_lattice(S, resolution);
    std::vector<signed char> keep(lattice.size(), 0);

    if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (long long i = 0; i < static_cast<long long>(lattice.size()); ++i)
            keep[i] = contains(S, lattice[i], tol_feas) ? 1 : 0;
    } else {
        for (std::size_t i = 0; i < lattice.size(); ++i)
            keep[i] = contains(S, lattice[i], tol_feas) ? 1 : 0;
    }

    Grid grid{{}, resolution, S};
    for (std::size_t i = 0; i < lattice.size(); ++i)
        if (keep[i]) grid.points.push_back(lattice[i]);
    if (grid.points.empty())
        throw InputError("make_grid: resolution too coarse, no lattice point lies in the body");
    return grid;
}

}  // namespace

Grid make_grid(const ConvexBody& S, double resolution, double tol_feas) {
    return filter_lattice(S, resolution, tol_feas, true);
}

namespace serial {
Grid make_grid(const ConvexBody& S, double resolution, double tol_feas) {
    return filter_lattice(S, resolution, tol_feas, false);
}
}  // namespace serial

EqReport brute_eq(const Bifunction& g, const std::vector<Point>& candidates,
                  const ConvexBody& S, double resolution, double tol) {
    const Grid grid = make_grid(S, resolution);
    return eq_set(g, candidates, grid.points, tol);
}

namespace {

bool has_match(const Point& p, const std::vector<Point>& set, double tol) {
    for (const auto& q : set)
        if (distance(p, q) <= tol) return true;
    return false;
}

double directed_hausdorff(const std::vector<Point>& from, const std::vector<Point>& to) {
    double worst = 0.0;
    for (const auto& p : from) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : to) best = std::min(best, distance(p, q));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

ComparisonReport compare(const EqReport& reduced, const EqReport& brute, double tol) {
    if (reduced.candidates != brute.candidates)
        throw InputError("compare: reports answer different candidate lists");

    ComparisonReport out;
    for (const auto& p : reduced.solutions)
        if (!has_match(p, brute.solutions, tol)) out.only_in_reduced.push_back(p);
    for (const auto& p : brute.solutions)
        if (!has_match(p, reduced.solutions, tol)) out.only_in_brute.push_back(p);
    out.agree = out.only_in_reduced.empty() && out.only_in_brute.empty();

    const bool r_empty = reduced.solutions.empty();
    const bool b_empty = brute.solutions.empty();
    if (r_empty && b_empty)
        out.hausdorff_gap = 0.0;
    else if (r_empty || b_empty)
        out.hausdorff_gap = std::numeric_limits<double>::infinity();
    else
        out.hausdorff_gap = std::max(directed_hausdorff(reduced.solutions, brute.solutions),
                                     directed_hausdorff(brute.solutions, reduced.solutions));
    return out;
}

}  // namespace eqgeo
