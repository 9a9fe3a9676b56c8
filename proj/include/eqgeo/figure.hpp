#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "eqgeo/convex_body.hpp"
#include "eqgeo/tolerances.hpp"
#include "eqgeo/vec.hpp"

namespace eqgeo {

// Drawing parameters for the 2-D partition picture. The exterior scatter is
// sampled from the body's bounding box scaled by box_scale about its center.
struct FigureOptions {
    std::size_t exterior_samples = 200;
    double box_scale = 2.0;
    unsigned long long seed = kDefaultSeed;
    int width = 640;
    int height = 640;
    int edge_rays = 3;  // cone rays drawn per open edge
};

// One sampled exterior point with the base of the cell containing it (its
// metric projection onto the body).
struct FigureRow {
    Point x;
    Point base;
    std::size_t feature = 0;  // vertex index, or vertex_count + edge index
};

struct Figure {
    std::string svg;
    std::string csv;
    std::vector<FigureRow> rows;
};

// Renders the cell decomposition of the plane outside a 2-D polytope: the
// body, its vertices and open edges, the cones translated to the boundary,
// and a seeded exterior scatter colored by containing cell. The CSV lists
// (exterior point, cell base) rows and is byte-identical for a fixed body,
// options, and seed.
Figure partition_figure(const ConvexBody& body, const FigureOptions& opt = {});

void write_figure(const Figure& fig, const std::string& svg_path, const std::string& csv_path);

}  // namespace eqgeo
