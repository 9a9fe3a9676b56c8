#include "eqgeo/bifunction.hpp"

#include <limits>
#include <stdexcept>

#include "eqgeo/errors.hpp"

namespace eqgeo {

double ObjectiveSpec::operator()(const Point& v) const {
    switch (kind) {
        case Kind::affine:
            return dot(coeffs.at(0), v) + offsets.at(0);
        case Kind::max_affine: {
            if (coeffs.empty()) throw InputError("max_affine objective has no pieces");
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                const double val = dot(coeffs[i], v) + offsets.at(i);
                if (val > best) best = val;
            }
            return best;
        }
        case Kind::sq_norm:
            return norm_sq(sub(v, anchor));
        case Kind::neg_sq_norm:
            return -norm_sq(sub(v, anchor));
        case Kind::neg_distance_to:
            return -distance(v, anchor);
    }
    throw InputError("objective kind out of range");
}

Point OperatorSpec::operator()(const Point& x) const {
    switch (kind) {
        case Kind::shift_to:
            return sub(x, vec);
        case Kind::constant:
            return vec;
    }
    throw InputError("operator kind out of range");
}

namespace {

bool convex_kind(ObjectiveSpec::Kind k) {
    return k == ObjectiveSpec::Kind::affine || k == ObjectiveSpec::Kind::max_affine ||
           k == ObjectiveSpec::Kind::sq_norm;
}

}  // namespace

Bifunction BifunctionSpec::instantiate() const {
    Bifunction g;
    g.label = label;
    switch (kind) {
        case Kind::objective_difference: {
            const ObjectiveSpec fn = f;
            g.eval = [fn](const Point& u, const Point& v) { return fn(u) - fn(v); };
            // g(u, .) = f(u) - f: quasiconvex iff f quasiconcave, lsc iff f usc.
            g.declared_quasiconvex_2nd = f.quasiconcave;
            g.declared_lsc_2nd = f.usc;
            break;
        }
        case Kind::projection_gap: {
            const Point target = xstar;
            g.eval = [target](const Point& u, const Point& v) {
                return dot(sub(v, u), sub(target, u));
            };
            g.declared_quasiconvex_2nd = true;  // affine in v
            g.declared_lsc_2nd = true;
            break;
        }
        case Kind::vi_gap: {
            const OperatorSpec T = op;
            g.eval = [T](const Point& u, const Point& v) { return dot(T(u), sub(u, v)); };
            g.declared_quasiconvex_2nd = true;  // affine in v
            g.declared_lsc_2nd = true;
            break;
        }
        case Kind::separable_sum: {
            const ObjectiveSpec a = phi, b = psi;
            const double k = shift;
            g.eval = [a, b, k](const Point& u, const Point& v) { return a(u) + b(v) - k; };
            g.declared_quasiconvex_2nd = convex_kind(psi.kind);
            g.declared_lsc_2nd = true;
            break;
        }
    }
    return g;
}

}  // namespace eqgeo
