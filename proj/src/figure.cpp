#include "eqgeo/figure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "eqgeo/errors.hpp"
#include "eqgeo/geometry.hpp"
#include "eqgeo/projection.hpp"
#include "eqgeo/rng.hpp"

namespace eqgeo {

namespace {

// Cell colors, cycled over features (vertices first, then open edges).
constexpr const char* kPalette[] = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

// World-to-screen map: uniform scale, y flipped, content centered.
struct Screen {
    double scale = 1.0;
    double offx = 0.0, offy = 0.0;
    Point lo, hi;  // world window

    double x(double wx) const { return offx + (wx - lo[0]) * scale; }
    double y(double wy) const { return offy - (wy - lo[1]) * scale; }
    std::string at(const Point& w) const {
        return fmt("%.2f", x(w[0])) + "," + fmt("%.2f", y(w[1]));
    }
};

// Counterclockwise vertex order around the centroid. The centroid of the
// extreme points of a 2-D polytope is interior (or the midpoint of a
// segment), so the angular sort is total.
std::vector<Point> ccw_vertices(const ConvexBody& body) {
    std::vector<Point> verts = extreme_points(body);
    Point c{0.0, 0.0};
    for (const auto& v : verts) {
        c[0] += v[0];
        c[1] += v[1];
    }
    c[0] /= static_cast<double>(verts.size());
    c[1] /= static_cast<double>(verts.size());
    std::sort(verts.begin(), verts.end(), [&c](const Point& a, const Point& b) {
        return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
    });
    return verts;
}

Point outward_normal(const Point& a, const Point& b) {
    const Point u = sub(b, a);
    const double n = norm(u);
    return {u[1] / n, -u[0] / n};
}

double dist_to_segment(const Point& p, const Point& a, const Point& b) {
    const Point ab = sub(b, a);
    const double len2 = norm_sq(ab);
    double t = len2 > 0.0 ? dot(sub(p, a), ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, lerp(a, b, t));
}

// Vertex index, or vertex_count + first matching edge index; the nearest
// vertex when the base sits off every feature by more than the snap.
std::size_t classify_feature(const Point& base, const std::vector<Point>& verts,
                             double snap = 1e-7) {
    const std::size_t k = verts.size();
    for (std::size_t i = 0; i < k; ++i)
        if (distance(base, verts[i]) <= snap) return i;
    for (std::size_t e = 0; k >= 2 && e < k; ++e)
        if (dist_to_segment(base, verts[e], verts[(e + 1) % k]) <= snap) return k + e;
    std::size_t best = 0;
    double best_d = distance(base, verts[0]);
    for (std::size_t i = 1; i < k; ++i)
        if (const double d = distance(base, verts[i]); d < best_d) {
            best_d = d;
            best = i;
        }
    return best;
}

}  // namespace

Figure partition_figure(const ConvexBody& body, const FigureOptions& opt) {
    if (!body.is_polytope() || body.dim() != 2)
        throw InputError("partition_figure: needs a 2-D polytope");
    if (!(opt.box_scale > 1.0 + 1e-9))
        throw InputError("partition_figure: needs box_scale > 1 to leave exterior room");
    if (opt.exterior_samples == 0)
        throw InputError("partition_figure: needs at least one exterior sample");

    const std::vector<Point> verts = ccw_vertices(body);
    const std::size_t k = verts.size();

    // Square sampling window centered on the body's bounding box.
    const auto [bb_lo, bb_hi] = body.bounding_box();
    const Point center{(bb_lo[0] + bb_hi[0]) / 2.0, (bb_lo[1] + bb_hi[1]) / 2.0};
    const double half =
        std::max({(bb_hi[0] - bb_lo[0]) / 2.0, (bb_hi[1] - bb_lo[1]) / 2.0, 1e-6}) *
        opt.box_scale;
    Screen scr;
    scr.lo = {center[0] - half, center[1] - half};
    scr.hi = {center[0] + half, center[1] + half};

    const double margin = 24.0;
    scr.scale = (std::min(opt.width, opt.height) - 2.0 * margin) / (2.0 * half);
    scr.offx = (opt.width - 2.0 * half * scr.scale) / 2.0;
    scr.offy = opt.height - (opt.height - 2.0 * half * scr.scale) / 2.0;

    // Exterior scatter. Rejection sampling against membership keeps the
    // stream deterministic for a fixed seed.
    Rng rng(opt.seed);
    std::vector<FigureRow> rows;
    rows.reserve(opt.exterior_samples);
    std::size_t attempts = 0;
    const std::size_t attempt_cap = 10000 * opt.exterior_samples;
    while (rows.size() < opt.exterior_samples) {
        if (++attempts > attempt_cap)
            throw NonConvergence("partition_figure: exterior sampling stalled", center, 0.0,
                                 attempts);
        const Point x = rng.point_in_box(scr.lo, scr.hi);
        if (contains(body, x)) continue;
        FigureRow row;
        row.x = x;
        row.base = project(body, x).point;
        row.feature = classify_feature(row.base, verts);
        rows.push_back(std::move(row));
    }

    // Drawn length of the translated cones.
    const double cone_len = half * (1.0 - 1.0 / opt.box_scale) * 0.9;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.width) +
           "\" height=\"" + std::to_string(opt.height) + "\" viewBox=\"0 0 " +
           std::to_string(opt.width) + " " + std::to_string(opt.height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    // Scatter first so every construction line stays visible above it.
    svg += "<g stroke=\"none\">\n";
    for (const auto& row : rows) {
        svg += "<circle cx=\"" + fmt("%.2f", scr.x(row.x[0])) + "\" cy=\"" +
               fmt("%.2f", scr.y(row.x[1])) + "\" r=\"2.4\" fill=\"" +
               kPalette[row.feature % kPaletteSize] + "\" fill-opacity=\"0.8\"/>\n";
    }
    svg += "</g>\n";

    // Translated cones. Vertex cones are circular wedges between the two
    // adjacent edge normals; each open edge carries parallel normal rays.
    svg += "<g fill=\"#f2a654\" fill-opacity=\"0.28\" stroke=\"#d98c2b\" "
           "stroke-opacity=\"0.65\" stroke-width=\"1\">\n";
    if (k == 1) {
        // The cone at an isolated point is the whole plane.
        svg += "<circle cx=\"" + fmt("%.2f", scr.x(verts[0][0])) + "\" cy=\"" +
               fmt("%.2f", scr.y(verts[0][1])) + "\" r=\"" + fmt("%.2f", cone_len * scr.scale) +
               "\"/>\n";
    }
    for (std::size_t i = 0; k >= 2 && i < k; ++i) {
        const Point& v = verts[i];
        const Point n_in = outward_normal(verts[(i + k - 1) % k], v);
        const Point n_out = outward_normal(v, verts[(i + 1) % k]);
        const double a0 = std::atan2(n_in[1], n_in[0]);
        double sweep = std::atan2(n_out[1], n_out[0]) - a0;
        sweep = std::fmod(sweep + 4.0 * std::numbers::pi, 2.0 * std::numbers::pi);
        if (sweep < 1e-9) continue;  // collinear edges meet in a degenerate wedge
        const int steps = std::max(1, static_cast<int>(std::ceil(sweep / 0.17)));
        std::string d = "M" + scr.at(v);
        for (int s = 0; s <= steps; ++s) {
            const double a = a0 + sweep * s / steps;
            d += " L" + scr.at({v[0] + cone_len * std::cos(a), v[1] + cone_len * std::sin(a)});
        }
        svg += "<path d=\"" + d + " Z\"/>\n";
    }
    for (std::size_t e = 0; k >= 2 && e < k; ++e) {
        const Point& a = verts[e];
        const Point& b = verts[(e + 1) % k];
        const Point n = outward_normal(a, b);
        for (int j = 1; j <= opt.edge_rays; ++j) {
            const Point p = lerp(a, b, static_cast<double>(j) / (opt.edge_rays + 1));
            svg += "<line x1=\"" + fmt("%.2f", scr.x(p[0])) + "\" y1=\"" +
                   fmt("%.2f", scr.y(p[1])) + "\" x2=\"" +
                   fmt("%.2f", scr.x(p[0] + cone_len * n[0])) + "\" y2=\"" +
                   fmt("%.2f", scr.y(p[1] + cone_len * n[1])) + "\"/>\n";
        }
    }
    svg += "</g>\n";

    // The body, then its boundary split into open edges and vertices. Edge
    // strokes stop short of the corners: the decomposition is into the
    // vertex set and the open segments between them.
    if (k >= 3) {
        std::string d = "M" + scr.at(verts[0]);
        for (std::size_t i = 1; i < k; ++i) d += " L" + scr.at(verts[i]);
        svg += "<path d=\"" + d + " Z\" fill=\"#dbe7f5\" stroke=\"none\"/>\n";
    }
    svg += "<g stroke=\"#2f5d9e\" stroke-width=\"3\" stroke-linecap=\"round\">\n";
    const double shrink = 0.035;
    for (std::size_t e = 0; k >= 2 && e < (k == 2 ? std::size_t{1} : k); ++e) {
        const Point a = lerp(verts[e], verts[(e + 1) % k], shrink);
        const Point b = lerp(verts[e], verts[(e + 1) % k], 1.0 - shrink);
        svg += "<line x1=\"" + fmt("%.2f", scr.x(a[0])) + "\" y1=\"" + fmt("%.2f", scr.y(a[1])) +
               "\" x2=\"" + fmt("%.2f", scr.x(b[0])) + "\" y2=\"" + fmt("%.2f", scr.y(b[1])) +
               "\"/>\n";
    }
    svg += "</g>\n";
    for (const auto& v : verts) {
        svg += "<circle cx=\"" + fmt("%.2f", scr.x(v[0])) + "\" cy=\"" + fmt("%.2f", scr.y(v[1])) +
               "\" r=\"5\" fill=\"#1f3a67\" stroke=\"#ffffff\" stroke-width=\"1.5\"/>\n";
    }
    svg += "</svg>\n";

    // Full-precision table of the scatter, one row per sampled point.
    std::string csv = "exterior_x,exterior_y,base_x,base_y\n";
    for (const auto& row : rows) {
        csv += fmt("%.17g", row.x[0]) + "," + fmt("%.17g", row.x[1]) + "," +
               fmt("%.17g", row.base[0]) + "," + fmt("%.17g", row.base[1]) + "\n";
    }

    return {std::move(svg), std::move(csv), std::move(rows)};
}

void write_figure(const Figure& fig, const std::string& svg_path, const std::string& csv_path) {
    std::ofstream svg(svg_path, std::ios::binary);
    if (!svg) throw InputError("cannot write figure file '" + svg_path + "'");
    svg << fig.svg;
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw InputError("cannot write figure file '" + csv_path + "'");
    csv << fig.csv;
}

}  // namespace eqgeo
