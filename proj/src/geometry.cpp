#include "eqgeo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eqgeo/errors.hpp"
#include "eqgeo/rng.hpp"

namespace eqgeo {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<Point> others_of(const std::vector<Point>& gens, std::size_t skip) {
    std::vector<Point> rest;
    rest.reserve(gens.size() - 1);
    for (std::size_t j = 0; j < gens.size(); ++j)
        if (j != skip) rest.push_back(gens[j]);
    return rest;
}

std::vector<signed char> extreme_flags(const std::vector<Point>& gens, double tol_feas,
                                       bool parallel) {
    std::vector<signed char> flag(gens.size(), 0);
    if (gens.size() == 1) {
        flag[0] = 1;
        return flag;
    }
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (long long i = 0; i < static_cast<long long>(gens.size()); ++i) {
            const auto rest = others_of(gens, static_cast<std::size_t>(i));
            const auto pr = project_onto_hull(rest, gens[i], tol_feas);
            flag[i] = distance(gens[i], pr.point) > tol_feas ? 1 : 0;
        }
    } else {
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const auto rest = others_of(gens, i);
            const auto pr = project_onto_hull(rest, gens[i], tol_feas);
            flag[i] = distance(gens[i], pr.point) > tol_feas ? 1 : 0;
        }
    }
    return flag;
}

std::vector<Point> sphere_sample(const Ball& ball, std::size_t count,
                                 unsigned long long seed) {
    const std::size_t n = ball.center.size();
    std::vector<Point> pts;
    pts.reserve(count);
    if (n == 1) {
        pts.push_back({ball.center[0] + ball.radius});
        if (count > 1) pts.push_back({ball.center[0] - ball.radius});
        return pts;
    }
    if (n == 2) {
        for (std::size_t k = 0; k < count; ++k) {
            const double a = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(count);
            pts.push_back({ball.center[0] + ball.radius * std::cos(a),
                           ball.center[1] + ball.radius * std::sin(a)});
        }
        return pts;
    }
    if (n == 3) {
        // Fibonacci lattice.
        const double golden = kPi * (3.0 - std::sqrt(5.0));
        for (std::size_t k = 0; k < count; ++k) {
            const double z = count == 1 ? 0.0
                                        : 1.0 - 2.0 * static_cast<double>(k) /
                                                    static_cast<double>(count - 1);
            const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double a = golden * static_cast<double>(k);
            pts.push_back({ball.center[0] + ball.radius * rad * std::cos(a),
                           ball.center[1] + ball.radius * rad * std::sin(a),
                           ball.center[2] + ball.radius * z});
        }
        return pts;
    }
    Rng rng(seed);
    for (std::size_t k = 0; k < count; ++k) {
        const Point u = rng.unit_vector(n);
        Point p(ball.center);
        for (std::size_t i = 0; i < n; ++i) p[i] += ball.radius * u[i];
        pts.push_back(std::move(p));
    }
    return pts;
}

}  // namespace

std::vector<Point> extreme_points(const ConvexBody& body, double tol_feas) {
    if (!body.is_polytope())
        throw InputError("extreme_points: extreme-point enumeration requires a polytope");
    const auto& gens = body.as_polytope().generators;
    const auto flag = extreme_flags(gens, tol_feas, true);
    std::vector<Point> out;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (flag[i]) out.push_back(gens[i]);
    return out;
}

namespace serial {
std::vector<Point> extreme_points(const ConvexBody& body, double tol_feas) {
    if (!body.is_polytope())
        throw InputError("extreme_points: extreme-point enumeration requires a polytope");
    const auto& gens = body.as_polytope().generators;
    const auto flag = extreme_flags(gens, tol_feas, false);
    std::vector<Point> out;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (flag[i]) out.push_back(gens[i]);
    return out;
}
}  // namespace serial

std::vector<Point> exposed_points_sample(const ConvexBody& body, std::size_t count,
                                         unsigned long long seed) {
    if (count < 1) throw InputError("exposed_points_sample: count must be >= 1");
    if (body.is_polytope()) return extreme_points(body);
    return sphere_sample(body.as_ball(), count, seed);
}

bool normal_cone_contains(const ConvexBody& body, const Point& base, const Point& dir,
                          double tol) {
    check_dim(base, body.dim(), "normal_cone_contains");
    check_dim(dir, body.dim(), "normal_cone_contains");
    if (!contains(body, base, kTolFeas))
        throw InputError("normal_cone_contains: base point is not in the body");

    if (body.is_polytope()) {
        for (const auto& v : body.as_polytope().generators)
            if (dot(sub(v, base), dir) > tol) return false;
        return true;
    }

    const Ball& b = body.as_ball();
    const double dn = norm(dir);
    if (dn <= tol) return true;
    const Point out = sub(base, b.center);
    const double rad = norm(out);
    if (b.radius - rad > kTolFeas) return false;  // interior base: cone is {0}
    Point u = scale(out, 1.0 / rad);
    const double lambda = dot(dir, u);
    if (lambda < -tol) return false;
    double resid_sq = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double r = dir[k] - lambda * u[k];
        resid_sq += r * r;
    }
    return std::sqrt(resid_sq) <= tol * (1.0 + dn);
}

bool gauss_map_contains(const ConvexBody& body, const Point& base, const Point& dir,
                        double tol) {
    if (std::fabs(norm(dir) - 1.0) > tol) return false;
    return normal_cone_contains(body, base, dir, tol);
}

Point locate_partition_cell(const ConvexBody& body, const Point& query, double tol_feas) {
    check_dim(query, body.dim(), "locate_partition_cell");
    if (contains(body, query, tol_feas))
        throw InputError("locate_partition_cell: query lies in the body, no cell to locate");
    const auto pr = project(body, query, tol_feas);
    const Point dir = sub(query, pr.point);
    if (norm(dir) <= tol_feas || !normal_cone_contains(body, pr.point, dir, tol_feas))
        throw NonConvergence(pr.point, pr.residual, pr.iterations);
    return pr.point;
}

FarthestResult farthest_points(const ConvexBody& body, const Point& query, double tol_eq) {
    check_dim(query, body.dim(), "farthest_points");

    if (body.is_ball()) {
        const Ball& b = body.as_ball();
        const Point d = sub(query, b.center);
        const double dist = norm(d);
        if (dist <= kTolPt) {
            return {sphere_sample(b, std::max<std::size_t>(4, 2 * body.dim()), kDefaultSeed),
                    true};
        }
        Point p(b.center);
        for (std::size_t k = 0; k < p.size(); ++k) p[k] -= b.radius * d[k] / dist;
        return {{p}, false};
    }

    const auto verts = extreme_points(body);
    double best = -1.0;
    for (const auto& v : verts) best = std::max(best, distance(v, query));
    FarthestResult result;
    for (const auto& v : verts)
        if (distance(v, query) >= best - tol_eq) result.points.push_back(v);
    return result;
}

bool is_exposed_point(const ConvexBody& body, const Point& p, double tol) {
    check_dim(p, body.dim(), "is_exposed_point");
    if (body.is_ball()) {
        const Ball& b = body.as_ball();
        return std::fabs(distance(p, b.center) - b.radius) <= tol;
    }

    const auto& gens = body.as_polytope().generators;
    if (gens.size() == 1) return distance(p, gens[0]) <= tol;

    // Find p among the generators, project it onto the hull of the rest, and
    // verify that the separating direction makes it the unique maximizer.
    std::size_t self = gens.size();
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (distance(gens[i], p) <= tol) {
            self = i;
            break;
        }
    if (self == gens.size()) return false;

    const auto rest = others_of(gens, self);
    const auto pr = project_onto_hull(rest, gens[self], tol);
    const Point c = sub(gens[self], pr.point);
    if (norm(c) <= tol) return false;

    const double at_p = dot(c, gens[self]);
    double best_other = -std::numeric_limits<double>::infinity();
    for (const auto& w : rest) best_other = std::max(best_other, dot(c, w));
    return at_p - best_other > tol;
}

Cone::Cone(ConvexBody body, Point base, double tol_feas)
    : body_(std::move(body)), base_(std::move(base)) {
    check_dim(base_, body_.dim(), "Cone");
    if (!eqgeo::contains(body_, base_, tol_feas))
        throw InputError("Cone: base point is not in the body");
}

}  // namespace eqgeo
