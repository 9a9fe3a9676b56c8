#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "eqgeo/vec.hpp"

namespace eqgeo {

// Two-argument map g(u, v) defining the equilibrium condition g(x0, x) <= 0.
// The declared flags are assertions by the constructor about the second
// argument; they gate the reductions and are spot-checked (not proved) by
// check_quasiconvex.
struct Bifunction {
    std::function<double(const Point&, const Point&)> eval;
    bool declared_quasiconvex_2nd = false;
    bool declared_lsc_2nd = false;
    std::string label;
};

// Serializable objective f: R^n -> R. The quasiconcave/usc flags are author
// declarations carried with the formula, mirroring Bifunction's flags.
struct ObjectiveSpec {
    enum class Kind { affine, max_affine, sq_norm, neg_sq_norm, neg_distance_to };

    Kind kind = Kind::affine;
    // affine:     f(v) = <coeffs[0], v> + offsets[0]
    // max_affine: f(v) = max_i <coeffs[i], v> + offsets[i]
    std::vector<Point> coeffs;
    std::vector<double> offsets;
    // sq_norm: |v - anchor|^2; neg_sq_norm: -|v - anchor|^2;
    // neg_distance_to: -|v - anchor|
    Point anchor;
    bool quasiconcave = false;
    bool usc = true;
    std::string label;

    double operator()(const Point& v) const;
    bool operator==(const ObjectiveSpec&) const = default;
};

// Serializable operator T: R^n -> R^n for variational inequalities.
struct OperatorSpec {
    enum class Kind { shift_to, constant };

    Kind kind = Kind::shift_to;
    // shift_to: T(x) = x - vec; constant: T(x) = vec
    Point vec;
    std::string label;

    Point operator()(const Point& x) const;
    bool operator==(const OperatorSpec&) const = default;
};

// Serializable bifunction. instantiate() builds the evaluator and derives
// the declared flags:
//   objective_difference  g(u,v) = f(u) - f(v); quasiconvex in v iff f is
//                         declared quasiconcave, lsc in v iff f is usc
//   projection_gap        g(u,v) = <v - u, xstar - u>; affine in v
//   vi_gap                g(u,v) = <T(u), u - v>; affine in v
//   separable_sum         g(u,v) = phi(u) + psi(v) - shift; quasiconvex in v
//                         iff psi is of a convex kind
struct BifunctionSpec {
    enum class Kind { objective_difference, projection_gap, vi_gap, separable_sum };

    Kind kind = Kind::objective_difference;
    ObjectiveSpec f;
    Point xstar;
    OperatorSpec op;
    ObjectiveSpec phi, psi;
    double shift = 0.0;
    std::string label;

    Bifunction instantiate() const;
    bool operator==(const BifunctionSpec&) const = default;
};

}  // namespace eqgeo
