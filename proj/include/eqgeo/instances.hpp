#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "eqgeo/bifunction.hpp"
#include "eqgeo/convex_body.hpp"
#include "eqgeo/equilibrium.hpp"
#include "eqgeo/tolerances.hpp"
#include "eqgeo/vec.hpp"

namespace eqgeo {

enum class InstanceKind {
    projection,        // project xstar, verify certificate and expected point
    partition_probes,  // directed normal-cone membership table
    equilibrium,       // brute grid answer, optionally a gated reduction
    argmin,            // quasiconcave argmin over extreme points
    farthest,          // farthest points plus exposedness of each
    vi,                // variational inequality, cross-checked against projection
    exposed_reduction, // ball reduction against the brute grid
    open_ladder,       // open-interval refinement ladder (emptiness regression)
    partition_figure   // 2-D partition drawing; payload lives in the file format
};

const char* to_string(InstanceKind k);

// One directed membership probe: is dir in the normal cone at base?
struct ConeProbe {
    Point base;
    Point dir;
    bool inside = false;
    bool operator==(const ConeProbe&) const = default;
};

// Machine-checkable expectation for an instance's primary answer.
struct Expected {
    enum class Kind { points, empty_set, all_candidates, band, probes };
    Kind kind = Kind::points;
    std::vector<Point> points;      // points: exact solution set
    double lo = 0.0, hi = 0.0;      // band: 1-D solutions are candidates in [lo, hi]
    bool has_min_value = false;     // argmin: asserted minimum value
    double min_value = 0.0;
    bool operator==(const Expected&) const = default;
};

// A worked example packaged as data: body, problem payload, expected answer,
// and the property tags naming what it demonstrates. Which payload fields
// are meaningful depends on kind.
struct CatalogInstance {
    CatalogInstance(std::string id_, ConvexBody body_, InstanceKind kind_)
        : id(std::move(id_)), body(std::move(body_)), kind(kind_) {}

    std::string id;
    ConvexBody body;
    InstanceKind kind;

    Point xstar;                        // projection, farthest
    BifunctionSpec bifunction;          // equilibrium, exposed_reduction
    ObjectiveSpec objective;            // argmin, open_ladder
    OperatorSpec op;                    // vi

    double candidate_resolution = 0.0;  // grid candidates when > 0
    std::vector<Point> extra_candidates;
    Reduction mode = Reduction::none;   // reduction the instance demonstrates
    bool force_unsound = false;         // reduction must be forced past the gate
    Expected reduced_expected;          // expected answer of the forced reduction
    bool check_reduced = false;
    double tester_resolution = 0.0;     // brute oracle grid
    std::size_t exposed_count = kExposedSampleCount;

    int ladder_levels = 0;              // open_ladder refinements
    double ladder_base = 0.0;           // coarsest spacing

    std::vector<ConeProbe> cone_probes;
    Expected expected;
    std::vector<std::string> property_tags;

    bool operator==(const CatalogInstance&) const = default;
};

// Candidate list an instance's problems run over: the membership-filtered
// grid at candidate_resolution (when set) followed by extra_candidates.
std::vector<Point> instance_candidates(const CatalogInstance& inst);

// Inner 1-D grid of ]-1,1[ at the given spacing: -1+h, -1+2h, ..., 1-h.
// Shared by the refinement-ladder instances and the CLI.
std::vector<Point> open_interval_grid(double spacing);

struct ReplayResult {
    std::string id;
    bool passed = false;
    std::string message;  // first failed check, empty on success
};

// Executes the instance end to end and checks every expectation it carries.
ReplayResult run_instance(const CatalogInstance& inst);

// The shipped catalog. Every entry replays green via run_instance.
std::vector<CatalogInstance> catalog();

}  // namespace eqgeo
