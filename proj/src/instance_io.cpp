#include "eqgeo/instance_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "eqgeo/errors.hpp"

namespace eqgeo {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw InputError(path + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) bad(path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) bad(path + "." + key, "missing field");
    return *it;
}

double num_field(const json& j, const char* key, const std::string& path) {
    const json& v = field(j, key, path);
    if (!v.is_number()) bad(path + "." + key, "expected a number");
    return v.get<double>();
}

double num_or(const json& j, const char* key, double fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return j.at(key).get<double>();
}

bool bool_or(const json& j, const char* key, bool fallback, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_boolean()) bad(path + "." + key, "expected a boolean");
    return v.get<bool>();
}

std::string str_field(const json& j, const char* key, const std::string& path) {
    const json& v = field(j, key, path);
    if (!v.is_string()) bad(path + "." + key, "expected a string");
    return v.get<std::string>();
}

std::string str_or(const json& j, const char* key, const std::string& fallback) {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_string()) return fallback;
    return j.at(key).get<std::string>();
}

Point parse_point(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) bad(path, "expected a nonempty array of numbers");
    Point p;
    p.reserve(j.size());
    for (const auto& c : j) {
        if (!c.is_number()) bad(path, "expected a number coordinate");
        p.push_back(c.get<double>());
    }
    return p;
}

std::vector<Point> parse_points(const json& j, const std::string& path) {
    if (!j.is_array()) bad(path, "expected an array of points");
    std::vector<Point> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_point(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

json point_json(const Point& p) { return json(p); }

json points_json(const std::vector<Point>& pts) {
    json arr = json::array();
    for (const auto& p : pts) arr.push_back(point_json(p));
    return arr;
}

ConvexBody parse_body(const json& j, const std::string& path) {
    const std::string type = str_field(j, "type", path);
    if (type == "polytope")
        return ConvexBody::polytope(parse_points(field(j, "generators", path), path + ".generators"));
    if (type == "ball")
        return ConvexBody::ball(parse_point(field(j, "center", path), path + ".center"),
                                num_field(j, "radius", path));
    bad(path + ".type", "unknown body type '" + type + "'");
}

json body_json(const ConvexBody& body) {
    json j;
    if (body.is_polytope()) {
        j["type"] = "polytope";
        j["generators"] = points_json(body.as_polytope().generators);
    } else {
        j["type"] = "ball";
        j["center"] = point_json(body.as_ball().center);
        j["radius"] = body.as_ball().radius;
    }
    return j;
}

ObjectiveSpec parse_objective(const json& j, const std::string& path) {
    ObjectiveSpec f;
    const std::string type = str_field(j, "type", path);
    if (type == "affine")
        f.kind = ObjectiveSpec::Kind::affine;
    else if (type == "max-affine")
        f.kind = ObjectiveSpec::Kind::max_affine;
    else if (type == "sq-norm")
        f.kind = ObjectiveSpec::Kind::sq_norm;
    else if (type == "neg-sq-norm")
        f.kind = ObjectiveSpec::Kind::neg_sq_norm;
    else if (type == "neg-distance-to")
        f.kind = ObjectiveSpec::Kind::neg_distance_to;
    else
        bad(path + ".type", "unknown objective type '" + type + "'");

    if (f.kind == ObjectiveSpec::Kind::affine || f.kind == ObjectiveSpec::Kind::max_affine) {
        f.coeffs = parse_points(field(j, "coeffs", path), path + ".coeffs");
        const json& offs = field(j, "offsets", path);
        if (!offs.is_array() || offs.size() != f.coeffs.size())
            bad(path + ".offsets", "expected one offset per coefficient row");
        for (const auto& o : offs) f.offsets.push_back(o.get<double>());
    } else {
        f.anchor = parse_point(field(j, "anchor", path), path + ".anchor");
    }
    f.quasiconcave = bool_or(j, "quasiconcave", false, path);
    f.usc = bool_or(j, "usc", true, path);
    f.label = str_or(j, "label", type);
    return f;
}

json objective_json(const ObjectiveSpec& f) {
    json j;
    switch (f.kind) {
        case ObjectiveSpec::Kind::affine: j["type"] = "affine"; break;
        case ObjectiveSpec::Kind::max_affine: j["type"] = "max-affine"; break;
        case ObjectiveSpec::Kind::sq_norm: j["type"] = "sq-norm"; break;
        case ObjectiveSpec::Kind::neg_sq_norm: j["type"] = "neg-sq-norm"; break;
        case ObjectiveSpec::Kind::neg_distance_to: j["type"] = "neg-distance-to"; break;
    }
    if (f.kind == ObjectiveSpec::Kind::affine || f.kind == ObjectiveSpec::Kind::max_affine) {
        j["coeffs"] = points_json(f.coeffs);
        j["offsets"] = json(f.offsets);
    } else {
        j["anchor"] = point_json(f.anchor);
    }
    j["quasiconcave"] = f.quasiconcave;
    j["usc"] = f.usc;
    j["label"] = f.label;
    return j;
}

OperatorSpec parse_operator(const json& j, const std::string& path) {
    OperatorSpec op;
    const std::string type = str_field(j, "type", path);
    if (type == "shift-to")
        op.kind = OperatorSpec::Kind::shift_to;
    else if (type == "constant")
        op.kind = OperatorSpec::Kind::constant;
    else
        bad(path + ".type", "unknown operator type '" + type + "'");
    op.vec = parse_point(field(j, "vec", path), path + ".vec");
    op.label = str_or(j, "label", type);
    return op;
}

json operator_json(const OperatorSpec& op) {
    json j;
    j["type"] = op.kind == OperatorSpec::Kind::shift_to ? "shift-to" : "constant";
    j["vec"] = point_json(op.vec);
    j["label"] = op.label;
    return j;
}

BifunctionSpec parse_bifunction(const json& j, const std::string& path) {
    BifunctionSpec g;
    const std::string type = str_field(j, "type", path);
    if (type == "objective-difference") {
        g.kind = BifunctionSpec::Kind::objective_difference;
        g.f = parse_objective(field(j, "objective", path), path + ".objective");
    } else if (type == "projection-gap") {
        g.kind = BifunctionSpec::Kind::projection_gap;
        g.xstar = parse_point(field(j, "xstar", path), path + ".xstar");
    } else if (type == "vi-gap") {
        g.kind = BifunctionSpec::Kind::vi_gap;
        g.op = parse_operator(field(j, "operator", path), path + ".operator");
    } else {
        bad(path + ".type", "unknown bifunction type '" + type + "'");
    }
    g.label = str_or(j, "label", type);
    return g;
}

json bifunction_json(const BifunctionSpec& g) {
    json j;
    switch (g.kind) {
        case BifunctionSpec::Kind::objective_difference:
            j["type"] = "objective-difference";
            j["objective"] = objective_json(g.f);
            break;
        case BifunctionSpec::Kind::projection_gap:
            j["type"] = "projection-gap";
            j["xstar"] = point_json(g.xstar);
            break;
        case BifunctionSpec::Kind::vi_gap:
            j["type"] = "vi-gap";
            j["operator"] = operator_json(g.op);
            break;
        case BifunctionSpec::Kind::separable_sum:
            throw InputError("separable-sum bifunctions are not part of the file format");
    }
    j["label"] = g.label;
    return j;
}

Expected parse_expected(const json& j, const std::string& path) {
    Expected e;
    const std::string kind = str_field(j, "kind", path);
    if (kind == "points") {
        e.kind = Expected::Kind::points;
        e.points = parse_points(field(j, "points", path), path + ".points");
    } else if (kind == "empty") {
        e.kind = Expected::Kind::empty_set;
    } else if (kind == "all-candidates") {
        e.kind = Expected::Kind::all_candidates;
    } else if (kind == "band") {
        e.kind = Expected::Kind::band;
        e.lo = num_field(j, "lo", path);
        e.hi = num_field(j, "hi", path);
        if (j.contains("min_value")) {
            e.has_min_value = true;
            e.min_value = num_field(j, "min_value", path);
        }
    } else if (kind == "probes") {
        e.kind = Expected::Kind::probes;
    } else {
        bad(path + ".kind", "unknown expectation kind '" + kind + "'");
    }
    return e;
}

json expected_json(const Expected& e) {
    json j;
    switch (e.kind) {
        case Expected::Kind::points:
            j["kind"] = "points";
            j["points"] = points_json(e.points);
            break;
        case Expected::Kind::empty_set: j["kind"] = "empty"; break;
        case Expected::Kind::all_candidates: j["kind"] = "all-candidates"; break;
        case Expected::Kind::band:
            j["kind"] = "band";
            j["lo"] = e.lo;
            j["hi"] = e.hi;
            if (e.has_min_value) j["min_value"] = e.min_value;
            break;
        case Expected::Kind::probes: j["kind"] = "probes"; break;
    }
    return j;
}

void parse_candidates(const json& j, const std::string& path, CatalogInstance& inst) {
    const std::string type = str_field(j, "type", path);
    if (type == "grid") {
        inst.candidate_resolution = num_field(j, "resolution", path);
    } else if (type == "list") {
        inst.extra_candidates = parse_points(field(j, "points", path), path + ".points");
    } else if (type == "grid-plus") {
        inst.candidate_resolution = num_field(j, "resolution", path);
        inst.extra_candidates = parse_points(field(j, "extra", path), path + ".extra");
    } else {
        bad(path + ".type", "unknown candidate spec '" + type + "'");
    }
}

json candidates_json(const CatalogInstance& inst) {
    json j;
    if (inst.candidate_resolution > 0.0 && inst.extra_candidates.empty()) {
        j["type"] = "grid";
        j["resolution"] = inst.candidate_resolution;
    } else if (inst.candidate_resolution > 0.0) {
        j["type"] = "grid-plus";
        j["resolution"] = inst.candidate_resolution;
        j["extra"] = points_json(inst.extra_candidates);
    } else {
        j["type"] = "list";
        j["points"] = points_json(inst.extra_candidates);
    }
    return j;
}

InstanceKind parse_kind(const std::string& type, const std::string& path) {
    if (type == "project") return InstanceKind::projection;
    if (type == "partition-probes") return InstanceKind::partition_probes;
    if (type == "equilibrium") return InstanceKind::equilibrium;
    if (type == "argmin") return InstanceKind::argmin;
    if (type == "farthest") return InstanceKind::farthest;
    if (type == "vi") return InstanceKind::vi;
    if (type == "exposed-reduction") return InstanceKind::exposed_reduction;
    if (type == "open-ladder") return InstanceKind::open_ladder;
    if (type == "partition-figure") return InstanceKind::partition_figure;
    bad(path, "unknown problem type '" + type + "'");
}

Reduction parse_mode(const std::string& mode, const std::string& path) {
    if (mode == "generators") return Reduction::generators;
    if (mode == "extreme") return Reduction::extreme;
    if (mode == "exposed") return Reduction::exposed;
    if (mode == "none") return Reduction::none;
    bad(path, "unknown reduction mode '" + mode + "'");
}

}  // namespace

InstanceFile parse_instance_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InputError("parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + e.what());
    }

    const std::string root = "instance";
    const double version = num_field(doc, "version", root);
    if (version != 1.0)
        bad(root + ".version", "unsupported version " + std::to_string(version));

    const std::string id = str_field(doc, "id", root);
    ConvexBody body = parse_body(field(doc, "body", root), root + ".body");
    const double dim = num_field(doc, "dimension", root);
    if (dim != static_cast<double>(body.dim()))
        bad(root + ".dimension", "does not match the body dimension");

    const json& prob = field(doc, "problem", root);
    const std::string ppath = root + ".problem";
    const InstanceKind kind = parse_kind(str_field(prob, "type", ppath), ppath + ".type");

    CatalogInstance inst{id, std::move(body), kind};

    switch (kind) {
        case InstanceKind::projection:
        case InstanceKind::farthest:
            inst.xstar = parse_point(field(prob, "xstar", ppath), ppath + ".xstar");
            break;
        case InstanceKind::partition_probes: {
            const json& probes = field(prob, "probes", ppath);
            if (!probes.is_array()) bad(ppath + ".probes", "expected an array");
            for (std::size_t i = 0; i < probes.size(); ++i) {
                const std::string p = ppath + ".probes[" + std::to_string(i) + "]";
                ConeProbe probe;
                probe.base = parse_point(field(probes[i], "base", p), p + ".base");
                probe.dir = parse_point(field(probes[i], "dir", p), p + ".dir");
                probe.inside = bool_or(probes[i], "inside", false, p);
                inst.cone_probes.push_back(std::move(probe));
            }
            break;
        }
        case InstanceKind::equilibrium:
            inst.bifunction = parse_bifunction(field(prob, "bifunction", ppath),
                                               ppath + ".bifunction");
            parse_candidates(field(prob, "candidates", ppath), ppath + ".candidates", inst);
            inst.tester_resolution = num_field(prob, "resolution", ppath);
            inst.mode = parse_mode(str_or(prob, "mode", "none"), ppath + ".mode");
            inst.force_unsound = bool_or(prob, "force_unsound", false, ppath);
            if (prob.contains("reduced_expected")) {
                inst.check_reduced = true;
                inst.reduced_expected =
                    parse_expected(prob.at("reduced_expected"), ppath + ".reduced_expected");
            }
            break;
        case InstanceKind::argmin:
            inst.objective = parse_objective(field(prob, "objective", ppath),
                                             ppath + ".objective");
            parse_candidates(field(prob, "candidates", ppath), ppath + ".candidates", inst);
            break;
        case InstanceKind::vi:
            inst.op = parse_operator(field(prob, "operator", ppath), ppath + ".operator");
            parse_candidates(field(prob, "candidates", ppath), ppath + ".candidates", inst);
            break;
        case InstanceKind::exposed_reduction:
            inst.bifunction = parse_bifunction(field(prob, "bifunction", ppath),
                                               ppath + ".bifunction");
            parse_candidates(field(prob, "candidates", ppath), ppath + ".candidates", inst);
            inst.tester_resolution = num_field(prob, "resolution", ppath);
            inst.exposed_count =
                static_cast<std::size_t>(num_or(prob, "sample_count", kExposedSampleCount));
            inst.mode = Reduction::exposed;
            break;
        case InstanceKind::open_ladder:
            inst.objective = parse_objective(field(prob, "objective", ppath),
                                             ppath + ".objective");
            inst.ladder_base = num_field(prob, "base_resolution", ppath);
            inst.ladder_levels = static_cast<int>(num_field(prob, "levels", ppath));
            break;
        case InstanceKind::partition_figure:
            break;
    }

    if (doc.contains("expected"))
        inst.expected = parse_expected(doc.at("expected"), root + ".expected");
    if (doc.contains("tags")) {
        const json& tags = doc.at("tags");
        if (!tags.is_array()) bad(root + ".tags", "expected an array of strings");
        for (const auto& t : tags) inst.property_tags.push_back(t.get<std::string>());
    }

    InstanceFile out{std::move(inst), Tolerances{}, 200, 2.0};
    if (doc.contains("tolerances")) {
        const json& tol = doc.at("tolerances");
        out.tolerances.feas = num_or(tol, "feas", kTolFeas);
        out.tolerances.pt = num_or(tol, "pt", kTolPt);
        out.tolerances.eq = num_or(tol, "eq", kTolEq);
    }
    if (kind == InstanceKind::partition_figure) {
        out.figure_samples = static_cast<std::size_t>(num_or(prob, "samples", 200.0));
        out.figure_box_scale = num_or(prob, "box_scale", 2.0);
    }
    return out;
}

std::string instance_to_json(const CatalogInstance& inst, const Tolerances& tol) {
    json doc;
    doc["version"] = 1;
    doc["id"] = inst.id;
    doc["dimension"] = inst.body.dim();
    doc["body"] = body_json(inst.body);

    json prob;
    prob["type"] = to_string(inst.kind);
    switch (inst.kind) {
        case InstanceKind::projection:
        case InstanceKind::farthest:
            prob["xstar"] = point_json(inst.xstar);
            break;
        case InstanceKind::partition_probes: {
            json probes = json::array();
            for (const auto& p : inst.cone_probes) {
                json pj;
                pj["base"] = point_json(p.base);
                pj["dir"] = point_json(p.dir);
                pj["inside"] = p.inside;
                probes.push_back(std::move(pj));
            }
            prob["probes"] = std::move(probes);
            break;
        }
        case InstanceKind::equilibrium:
            prob["bifunction"] = bifunction_json(inst.bifunction);
            prob["candidates"] = candidates_json(inst);
            prob["resolution"] = inst.tester_resolution;
            if (inst.mode != Reduction::none) prob["mode"] = to_string(inst.mode);
            if (inst.force_unsound) prob["force_unsound"] = true;
            if (inst.check_reduced) prob["reduced_expected"] = expected_json(inst.reduced_expected);
            break;
        case InstanceKind::argmin:
            prob["objective"] = objective_json(inst.objective);
            prob["candidates"] = candidates_json(inst);
            break;
        case InstanceKind::vi:
            prob["operator"] = operator_json(inst.op);
            prob["candidates"] = candidates_json(inst);
            break;
        case InstanceKind::exposed_reduction:
            prob["bifunction"] = bifunction_json(inst.bifunction);
            prob["candidates"] = candidates_json(inst);
            prob["resolution"] = inst.tester_resolution;
            prob["sample_count"] = inst.exposed_count;
            break;
        case InstanceKind::open_ladder:
            prob["objective"] = objective_json(inst.objective);
            prob["base_resolution"] = inst.ladder_base;
            prob["levels"] = inst.ladder_levels;
            break;
        case InstanceKind::partition_figure:
            break;
    }
    doc["problem"] = std::move(prob);
    doc["expected"] = expected_json(inst.expected);
    doc["tags"] = json(inst.property_tags);
    doc["tolerances"] = {{"feas", tol.feas}, {"pt", tol.pt}, {"eq", tol.eq}};
    return doc.dump(2) + "\n";
}

InstanceFile load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open instance file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_instance_json(buf.str());
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_instance_file(const CatalogInstance& inst, const std::string& path,
                         const Tolerances& tol) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write instance file '" + path + "'");
    out << instance_to_json(inst, tol);
}

std::vector<std::string> export_catalog(const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> paths;
    for (const auto& inst : catalog()) {
        const std::string path = (std::filesystem::path(dir) / (inst.id + ".json")).string();
        write_instance_file(inst, path);
        paths.push_back(path);
    }
    return paths;
}

}  // namespace eqgeo
