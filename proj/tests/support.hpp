#pragma once

// Shared test fixtures: seeded random bodies, exterior queries, and an
// exact nearest-point oracle that shares no code with the library solver.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "eqgeo/convex_body.hpp"
#include "eqgeo/rng.hpp"
#include "eqgeo/vec.hpp"

namespace support {

using eqgeo::ConvexBody;
using eqgeo::Point;
using eqgeo::Rng;

inline std::vector<Point> random_generators(Rng& rng, std::size_t dim, std::size_t count,
                                            double radius = 2.0) {
    std::vector<Point> gens;
    gens.reserve(count);
    while (gens.size() < count) {
        Point p(dim);
        for (auto& c : p) c = rng.uniform(-radius, radius);
        bool distinct = true;
        for (const auto& g : gens)
            if (eqgeo::distance(g, p) < 1e-6) distinct = false;
        if (distinct) gens.push_back(std::move(p));
    }
    return gens;
}

inline ConvexBody random_polytope(Rng& rng, std::size_t dim, std::size_t count,
                                  double radius = 2.0) {
    return ConvexBody::polytope(random_generators(rng, dim, count, radius));
}

inline Point centroid(const std::vector<Point>& pts) {
    Point c(pts[0].size(), 0.0);
    for (const auto& p : pts)
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += p[i];
    for (auto& x : c) x /= static_cast<double>(pts.size());
    return c;
}

// A point strictly outside conv(gens): further from the centroid than any
// generator is.
inline Point exterior_query(Rng& rng, const std::vector<Point>& gens) {
    const Point c = centroid(gens);
    double reach = 0.0;
    for (const auto& g : gens) reach = std::max(reach, eqgeo::distance(c, g));
    const Point u = rng.unit_vector(c.size());
    const double r = reach * rng.uniform(1.2, 2.5) + 0.5;
    Point q(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) q[i] = c[i] + r * u[i];
    return q;
}

// A hull point: random convex combination of all generators.
inline Point hull_point(Rng& rng, const std::vector<Point>& gens) {
    std::vector<double> w(gens.size());
    double total = 0.0;
    for (auto& x : w) {
        x = -std::log(std::max(rng.uniform(), 1e-300));
        total += x;
    }
    Point p(gens[0].size(), 0.0);
    for (std::size_t k = 0; k < gens.size(); ++k)
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += w[k] / total * gens[k][i];
    return p;
}

namespace detail {

// Solves the k x k system A t = b in place by Gaussian elimination with
// partial pivoting. Returns false on a (numerically) singular matrix.
inline bool solve_dense(std::vector<std::vector<double>>& A, std::vector<double>& b) {
    const std::size_t k = b.size();
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
        if (std::fabs(A[piv][col]) < 1e-12) return false;
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < k; ++r) {
            const double f = A[r][col] / A[col][col];
            for (std::size_t c = col; c < k; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t col = k; col-- > 0;) {
        for (std::size_t c = col + 1; c < k; ++c) b[col] -= A[col][c] * b[c];
        b[col] /= A[col][col];
    }
    return true;
}

struct FaceScan {
    double best = std::numeric_limits<double>::infinity();
    Point point;
};

// Tries the affine projection of q onto aff(subset); accepts it when the
// barycentric coordinates make it a point of conv(subset).
inline void try_subset(const std::vector<Point>& gens, const std::vector<std::size_t>& idx,
                       const Point& q, FaceScan& scan) {
    const std::size_t k = idx.size() - 1;
    const Point& w0 = gens[idx[0]];
    if (k == 0) {
        const double d = eqgeo::distance(w0, q);
        if (d < scan.best) {
            scan.best = d;
            scan.point = w0;
        }
        return;
    }
    std::vector<Point> B(k);
    for (std::size_t j = 0; j < k; ++j) B[j] = eqgeo::sub(gens[idx[j + 1]], w0);
    std::vector<std::vector<double>> G(k, std::vector<double>(k));
    std::vector<double> rhs(k);
    const Point d0 = eqgeo::sub(q, w0);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) G[r][c] = eqgeo::dot(B[r], B[c]);
        rhs[r] = eqgeo::dot(B[r], d0);
    }
    if (!solve_dense(G, rhs)) return;  // affinely dependent; a smaller subset covers it

    double lam0 = 1.0;
    for (double t : rhs) {
        if (t < -1e-9) return;
        lam0 -= t;
    }
    if (lam0 < -1e-9) return;

    Point p = w0;
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += rhs[j] * B[j][i];
    const double d = eqgeo::distance(p, q);
    if (d < scan.best) {
        scan.best = d;
        scan.point = std::move(p);
    }
}

inline void enumerate_subsets(const std::vector<Point>& gens, std::vector<std::size_t>& idx,
                              std::size_t start, std::size_t max_size, const Point& q,
                              FaceScan& scan) {
    if (!idx.empty()) try_subset(gens, idx, q, scan);
    if (idx.size() == max_size) return;
    for (std::size_t i = start; i < gens.size(); ++i) {
        idx.push_back(i);
        enumerate_subsets(gens, idx, i + 1, max_size, q, scan);
        idx.pop_back();
    }
}

}  // namespace detail

struct OracleNearest {
    Point point;
    double dist = 0.0;
};

// Exact nearest point of conv(gens) to q by face enumeration: the nearest
// point lies in the relative interior of the simplex spanned by some
// affinely independent generator subset of size <= n+1, where it coincides
// with the affine-hull projection. Exponential in |gens|; test-size inputs
// only.
inline OracleNearest nearest_point_oracle(const std::vector<Point>& gens, const Point& q) {
    detail::FaceScan scan;
    std::vector<std::size_t> idx;
    detail::enumerate_subsets(gens, idx, 0, gens[0].size() + 1, q, scan);
    return {scan.point, scan.best};
}

}  // namespace support
