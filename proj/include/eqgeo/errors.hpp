#pragma once

#include <stdexcept>
#include <string>

#include "eqgeo/vec.hpp"

namespace eqgeo {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Projection solver exceeded its iteration budget. Carries the best iterate
// found and its certificate residual.
struct NonConvergence : std::runtime_error {
    Point best_point;
    double residual;
    std::size_t iterations;

    NonConvergence(Point best, double res, std::size_t iters)
        : NonConvergence("projection solver did not converge after " +
                             std::to_string(iters) + " iterations (residual " +
                             std::to_string(res) + ")",
                         std::move(best), res, iters) {}

    NonConvergence(const std::string& what, Point best, double res, std::size_t iters)
        : std::runtime_error(what),
          best_point(std::move(best)),
          residual(res),
          iterations(iters) {}
};

// A bifunction or objective returned a non-finite value.
struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A reduction was requested without the analytic property that justifies it.
struct ReductionUnsound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace eqgeo
