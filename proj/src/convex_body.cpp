#include "eqgeo/convex_body.hpp"

#include <algorithm>
#include <stdexcept>

#include "eqgeo/errors.hpp"

namespace eqgeo {

ConvexBody::ConvexBody(Polytope poly, double tol_pt) : body_(std::move(poly)) {
    const auto& gens = std::get<Polytope>(body_).generators;
    if (gens.empty())
        throw InputError("polytope needs at least one generator");
    dim_ = gens.front().size();
    if (dim_ < 1)
        throw InputError("polytope generators must have dimension >= 1");
    for (const auto& g : gens) {
        if (g.size() != dim_)
            throw InputError("polytope generators have inconsistent dimensions");
        if (!all_finite(g))
            throw InputError("polytope generator has a non-finite coordinate");
    }
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (distance(gens[i], gens[j]) <= tol_pt)
                throw InputError("polytope generators " + std::to_string(i) + " and " +
                                 std::to_string(j) + " coincide at tolerance");
}

ConvexBody::ConvexBody(Ball ball) : body_(std::move(ball)) {
    const auto& b = std::get<Ball>(body_);
    dim_ = b.center.size();
    if (dim_ < 1)
        throw InputError("ball center must have dimension >= 1");
    if (!all_finite(b.center))
        throw InputError("ball center has a non-finite coordinate");
    if (!(b.radius > 0.0) || !std::isfinite(b.radius))
        throw InputError("ball radius must be positive and finite");
}

std::pair<Point, Point> ConvexBody::bounding_box() const {
    Point lo(dim_), hi(dim_);
    if (is_polytope()) {
        const auto& gens = as_polytope().generators;
        lo = gens.front();
        hi = gens.front();
        for (const auto& g : gens)
            for (std::size_t k = 0; k < dim_; ++k) {
                lo[k] = std::min(lo[k], g[k]);
                hi[k] = std::max(hi[k], g[k]);
            }
    } else {
        const auto& b = as_ball();
        for (std::size_t k = 0; k < dim_; ++k) {
            lo[k] = b.center[k] - b.radius;
            hi[k] = b.center[k] + b.radius;
        }
    }
    return {lo, hi};
}

}  // namespace eqgeo
