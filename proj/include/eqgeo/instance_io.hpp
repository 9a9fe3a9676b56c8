#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "eqgeo/instances.hpp"
#include "eqgeo/tolerances.hpp"

namespace eqgeo {

// A parsed instance file (JSON, "version": 1). The figure payload lives
// beside the instance because partition figures carry drawing parameters,
// not a solver problem.
struct InstanceFile {
    CatalogInstance instance;
    Tolerances tolerances;
    std::size_t figure_samples = 200;
    double figure_box_scale = 2.0;
};

// Parses an instance document. Errors are InputError with a field path
// ("problem.bifunction.objective.anchor: ...") or, for malformed JSON, the
// line and column of the failure.
InstanceFile parse_instance_json(const std::string& text);

std::string instance_to_json(const CatalogInstance& inst, const Tolerances& tol = {});

InstanceFile load_instance_file(const std::string& path);
void write_instance_file(const CatalogInstance& inst, const std::string& path,
                         const Tolerances& tol = {});

// Writes every catalog instance to dir/<id>.json; returns the paths.
std::vector<std::string> export_catalog(const std::string& dir);

}  // namespace eqgeo
