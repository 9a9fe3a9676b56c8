#pragma once

#include <cstddef>

namespace eqgeo {

// Default numeric tolerances. Every operation that consumes one accepts an
// override; these are the desk-scale defaults (n <= 10, |generators| <= 1e3).
struct Tolerances {
    double feas = 1e-8;   // feasibility / membership / projection certificate
    double pt = 1e-12;    // pairwise-distinct generator threshold
    double eq = 1e-9;     // inequality slack for equilibrium conditions
};

inline constexpr double kTolFeas = 1e-8;
inline constexpr double kTolPt = 1e-12;
inline constexpr double kTolEq = 1e-9;

// Point-set matching tolerance used when comparing solution sets.
inline constexpr double kPointMatchTol = 10.0 * kTolEq;

// Iteration cap for the polytope projection solver.
inline std::size_t projection_max_iter(std::size_t generator_count, std::size_t dim) {
    return 10 * generator_count * dim;
}

// Sphere sample count used when a ball's exposed points must be enumerated.
inline constexpr std::size_t kExposedSampleCount = 1024;

inline constexpr unsigned long long kDefaultSeed = 42;

}  // namespace eqgeo
