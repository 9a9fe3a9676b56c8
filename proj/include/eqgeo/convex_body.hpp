#pragma once

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "eqgeo/tolerances.hpp"
#include "eqgeo/vec.hpp"

namespace eqgeo {

// V-polytope: the convex hull of a finite, nonempty generator list.
// Generators must be pairwise distinct at tolerance tol_pt.
struct Polytope {
    std::vector<Point> generators;
};

// Euclidean ball, center + positive radius. A ball stands in for the compact
// convex sets whose exposed-point set is infinite.
struct Ball {
    Point center;
    double radius = 0.0;
};

// Immutable after construction; all coordinates validated finite, dimensions
// consistent. Safe to share across threads.
class ConvexBody {
public:
    explicit ConvexBody(Polytope poly, double tol_pt = kTolPt);
    explicit ConvexBody(Ball ball);

    static ConvexBody polytope(std::vector<Point> generators, double tol_pt = kTolPt) {
        return ConvexBody(Polytope{std::move(generators)}, tol_pt);
    }
    static ConvexBody ball(Point center, double radius) {
        return ConvexBody(Ball{std::move(center), radius});
    }

    std::size_t dim() const { return dim_; }
    bool is_polytope() const { return std::holds_alternative<Polytope>(body_); }
    bool is_ball() const { return std::holds_alternative<Ball>(body_); }

    const Polytope& as_polytope() const { return std::get<Polytope>(body_); }
    const Ball& as_ball() const { return std::get<Ball>(body_); }

    // Axis-aligned bounding box.
    std::pair<Point, Point> bounding_box() const;

    bool operator==(const ConvexBody& other) const {
        return body_ == other.body_;
    }

private:
    std::variant<Polytope, Ball> body_;
    std::size_t dim_ = 0;
};

inline bool operator==(const Polytope& a, const Polytope& b) {
    return a.generators == b.generators;
}
inline bool operator==(const Ball& a, const Ball& b) {
    return a.center == b.center && a.radius == b.radius;
}

}  // namespace eqgeo
