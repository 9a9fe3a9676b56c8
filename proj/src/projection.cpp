#include "eqgeo/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eqgeo/errors.hpp"

namespace eqgeo {

namespace {

// Solves the bordered KKT system of the affine minimizer
//   [ G  e ] [lambda]   [0]
//   [ e' 0 ] [  nu  ] = [1]
// in place with partial pivoting. Returns false on a vanishing pivot
// (affinely dependent column set).
bool solve_affine_system(std::vector<double>& a, std::vector<double>& rhs, std::size_t k) {
    const std::size_t m = k + 1;
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        double best = std::fabs(a[col * m + col]);
        for (std::size_t r = col + 1; r < m; ++r) {
            const double v = std::fabs(a[r * m + col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best < 1e-13) return false;
        if (piv != col) {
            for (std::size_t c = 0; c < m; ++c) std::swap(a[piv * m + c], a[col * m + c]);
            std::swap(rhs[piv], rhs[col]);
        }
        const double d = a[col * m + col];
        for (std::size_t r = col + 1; r < m; ++r) {
            const double f = a[r * m + col] / d;
            if (f == 0.0) continue;
            for (std::size_t c = col; c < m; ++c) a[r * m + c] -= f * a[col * m + c];
            rhs[r] -= f * rhs[col];
        }
    }
    for (std::size_t i = m; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t c = i + 1; c < m; ++c) s -= a[i * m + c] * rhs[c];
        rhs[i] = s / a[i * m + i];
    }
    return true;
}

struct Corral {
    std::vector<std::size_t> idx;  // generator indices
    std::vector<double> weight;    // convex weights, kept nonnegative, sum 1
};

// Min-norm point of conv{gens[i] - query}. Works in the shifted frame where
// the projection certificate is exactly Wolfe's duality gap
//   max_v <x, x - (v - query)> = |x|^2 - min_v <x, v - query>.
ProjectionResult project_polytope(const std::vector<Point>& gens, const Point& query,
                                  double tol_feas, std::size_t max_iter) {
    const std::size_t n = query.size();
    const std::size_t m = gens.size();

    std::vector<Point> shifted(m);
    for (std::size_t i = 0; i < m; ++i) shifted[i] = sub(gens[i], query);

    // Start from the generator nearest the query.
    std::size_t start = 0;
    double best_nsq = norm_sq(shifted[0]);
    for (std::size_t i = 1; i < m; ++i) {
        const double nsq = norm_sq(shifted[i]);
        if (nsq < best_nsq) {
            best_nsq = nsq;
            start = i;
        }
    }

    Corral corral{{start}, {1.0}};
    Point x = shifted[start];
    std::size_t iterations = 0;

    auto rebuild_x = [&] {
        x.assign(n, 0.0);
        for (std::size_t i = 0; i < corral.idx.size(); ++i)
            for (std::size_t k = 0; k < n; ++k)
                x[k] += corral.weight[i] * shifted[corral.idx[i]][k];
    };

    auto point_in_original_frame = [&] {
        Point p(n, 0.0);
        for (std::size_t i = 0; i < corral.idx.size(); ++i)
            for (std::size_t k = 0; k < n; ++k)
                p[k] += corral.weight[i] * gens[corral.idx[i]][k];
        return p;
    };

    auto certificate = [&](std::size_t& argmin) {
        double lo = std::numeric_limits<double>::infinity();
        argmin = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const double v = dot(x, shifted[i]);
            if (v < lo) {
                lo = v;
                argmin = i;
            }
        }
        return norm_sq(x) - lo;
    };

    while (true) {
        std::size_t lmo = 0;
        const double gap = certificate(lmo);
        if (gap <= tol_feas) {
            return {point_in_original_frame(), std::max(0.0, gap), iterations};
        }
        if (iterations >= max_iter)
            throw NonConvergence(point_in_original_frame(), std::max(0.0, gap), iterations);
        ++iterations;

        // Major cycle: bring the violating generator into the corral. It is
        // never already there when the gap is positive and x is the corral's
        // affine minimizer; guard anyway.
        if (std::find(corral.idx.begin(), corral.idx.end(), lmo) == corral.idx.end()) {
            corral.idx.push_back(lmo);
            corral.weight.push_back(0.0);
        }

        // Minor cycles: move to the affine minimizer of the corral, dropping
        // generators whose weight hits zero, until the minimizer is a convex
        // combination.
        while (true) {
            if (iterations >= max_iter) {
                rebuild_x();
                std::size_t tmp;
                throw NonConvergence(point_in_original_frame(),
                                     std::max(0.0, certificate(tmp)), iterations);
            }
            ++iterations;

            const std::size_t k = corral.idx.size();
            std::vector<double> sys((k + 1) * (k + 1), 0.0);
            std::vector<double> rhs(k + 1, 0.0);
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < k; ++j)
                    sys[i * (k + 1) + j] = dot(shifted[corral.idx[i]], shifted[corral.idx[j]]);
                sys[i * (k + 1) + k] = 1.0;
                sys[k * (k + 1) + i] = 1.0;
            }
            rhs[k] = 1.0;

            if (!solve_affine_system(sys, rhs, k)) {
                // Affinely dependent corral (possible only near termination):
                // drop the lightest member and retry.
                const std::size_t drop = static_cast<std::size_t>(
                    std::min_element(corral.weight.begin(), corral.weight.end()) -
                    corral.weight.begin());
                corral.idx.erase(corral.idx.begin() + drop);
                corral.weight.erase(corral.weight.begin() + drop);
                if (corral.idx.empty()) {
                    corral = Corral{{lmo}, {1.0}};
                }
                rebuild_x();
                continue;
            }

            const bool interior = [&] {
                for (std::size_t i = 0; i < k; ++i)
                    if (rhs[i] < -1e-12) return false;
                return true;
            }();

            if (interior) {
                double sum = 0.0;
                for (std::size_t i = 0; i < k; ++i) {
                    corral.weight[i] = std::max(0.0, rhs[i]);
                    sum += corral.weight[i];
                }
                for (auto& w : corral.weight) w /= sum;
                rebuild_x();
                break;
            }

            // Step from the current weights toward the affine minimizer until
            // the first weight vanishes.
            double t = 1.0;
            for (std::size_t i = 0; i < k; ++i)
                if (rhs[i] < 0.0) t = std::min(t, corral.weight[i] / (corral.weight[i] - rhs[i]));

            for (std::size_t i = 0; i < k; ++i)
                corral.weight[i] += t * (rhs[i] - corral.weight[i]);

            Corral next;
            double sum = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                if (corral.weight[i] > 1e-14) {
                    next.idx.push_back(corral.idx[i]);
                    next.weight.push_back(corral.weight[i]);
                    sum += corral.weight[i];
                }
            }
            if (next.idx.empty()) {
                next.idx.push_back(corral.idx[0]);
                next.weight.push_back(1.0);
                sum = 1.0;
            }
            for (auto& w : next.weight) w /= sum;
            corral = std::move(next);
            rebuild_x();
        }
    }
}

}  // namespace

ProjectionResult project(const ConvexBody& body, const Point& query, double tol_feas,
                         std::size_t max_iter) {
    check_dim(query, body.dim(), "project");
    if (!all_finite(query)) throw InputError("project: query has a non-finite coordinate");

    if (body.is_ball()) {
        const Ball& b = body.as_ball();
        const Point d = sub(query, b.center);
        const double dist = norm(d);
        if (dist <= b.radius) return {query, 0.0, 0};
        Point p(b.center);
        for (std::size_t k = 0; k < p.size(); ++k) p[k] += b.radius * d[k] / dist;
        return {p, 0.0, 0};
    }

    const auto& gens = body.as_polytope().generators;
    if (max_iter == 0) max_iter = projection_max_iter(gens.size(), body.dim());
    return project_polytope(gens, query, tol_feas, max_iter);
}

ProjectionResult project_onto_hull(const std::vector<Point>& generators, const Point& query,
                                   double tol_feas, std::size_t max_iter) {
    if (generators.empty()) throw InputError("project_onto_hull: no generators");
    if (max_iter == 0) max_iter = projection_max_iter(generators.size(), query.size());
    return project_polytope(generators, query, tol_feas, max_iter);
}

double projection_certificate(const ConvexBody& body, const Point& p, const Point& query) {
    check_dim(p, body.dim(), "projection_certificate");
    check_dim(query, body.dim(), "projection_certificate");
    const Point d = sub(query, p);
    if (body.is_polytope()) {
        double worst = -std::numeric_limits<double>::infinity();
        for (const auto& v : body.as_polytope().generators)
            worst = std::max(worst, dot(sub(v, p), d));
        return worst;
    }
    // sup over the ball of <x - p, d> = <c - p, d> + r |d|
    const Ball& b = body.as_ball();
    return dot(sub(b.center, p), d) + b.radius * norm(d);
}

bool contains(const ConvexBody& body, const Point& p, double tol) {
    check_dim(p, body.dim(), "contains");
    if (!all_finite(p)) return false;
    if (body.is_ball()) {
        const Ball& b = body.as_ball();
        return distance(p, b.center) <= b.radius + tol;
    }
    return distance(p, project(body, p).point) <= tol;
}

std::vector<ProjectionResult> batch_project(const ConvexBody& body,
                                            const std::vector<Point>& queries,
                                            double tol_feas, std::size_t max_iter) {
    std::vector<ProjectionResult> out(queries.size());
    std::vector<signed char> failed(queries.size(), 0);

#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < static_cast<long long>(queries.size()); ++i) {
        try {
            out[i] = project(body, queries[i], tol_feas, max_iter);
        } catch (...) {
            failed[i] = 1;
        }
    }

    // Deterministic error reporting: re-run the first failure in order.
    for (std::size_t i = 0; i < queries.size(); ++i)
        if (failed[i]) out[i] = project(body, queries[i], tol_feas, max_iter);
    return out;
}

namespace serial {
std::vector<ProjectionResult> batch_project(const ConvexBody& body,
                                            const std::vector<Point>& queries,
                                            double tol_feas, std::size_t max_iter) {
    std::vector<ProjectionResult> out;
    out.reserve(queries.size());
    for (const auto& q : queries) out.push_back(project(body, q, tol_feas, max_iter));
    return out;
}
}  // namespace serial

}  // namespace eqgeo
