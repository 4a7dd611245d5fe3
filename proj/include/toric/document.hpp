#pragma once

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toric/basis.hpp"
#include "toric/errors.hpp"
#include "toric/lattice.hpp"
#include "toric/patch.hpp"
#include "toric/solver.hpp"

namespace toric {

/// A control-point entry as written in a document: an affine position plus
/// an optional per-point weight override.
struct DocumentPoint {
    Vec3 position;
    std::optional<double> weight;
};

/// On-disk description of a patch problem: the depth-1 index set, the depth,
/// how to normalize the basis, the boundary mass-points of the depth-dilated
/// control net, and solver/mesh options. Inner points are unknowns; a
/// document may carry previously solved "inner" values, which solve ignores
/// and recomputes (energy/mesh use them when present).
struct PatchDocument {
    std::vector<LatticePoint> points;
    int depth = 1;
    NormalizationStrategy normalization = SelfExponentNormalization{};
    bool weights_equal = true;
    std::map<LatticePoint, double> weights;  // used when !weights_equal
    std::map<LatticePoint, DocumentPoint> boundary;
    std::map<LatticePoint, DocumentPoint> inner;
    EnergyFunctional functional = EnergyFunctional::quasi_harmonic;
    WeightMode weight_mode = WeightMode::fixed_weights_points_only;
    bool exact_solve = false;
    int subdivisions = 8;
    int quadrature_order = 8;
};

struct RunReport {
    std::string normalization;
    std::string functional;
    std::string weight_mode;
    double energy_before = 0;
    double energy_after = 0;
    double residual = 0;
    double condition = 0;
    double elapsed_seconds = 0;
};

namespace detail {

inline LatticePoint parse_point_key(const std::string& key) {
    const auto comma = key.find(',');
    if (comma == std::string::npos)
        throw ValidationError("lattice point key must be \"i,j\", got '" + key + "'");
    try {
        std::size_t used_i = 0, used_j = 0;
        const std::string si = key.substr(0, comma), sj = key.substr(comma + 1);
        const std::int64_t i = std::stoll(si, &used_i);
        const std::int64_t j = std::stoll(sj, &used_j);
        if (used_i != si.size() || used_j != sj.size())
            throw ValidationError("lattice point key must be \"i,j\", got '" + key + "'");
        return {i, j};
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw ValidationError("lattice point key must be \"i,j\", got '" + key + "'");
    }
}

inline double require_finite(double x, const std::string& what) {
    if (!std::isfinite(x)) throw ValidationError(what + " must be finite");
    return x;
}

inline std::map<LatticePoint, DocumentPoint> parse_document_points(const nlohmann::json& obj,
                                                                   const std::string& what) {
    std::map<LatticePoint, DocumentPoint> out;
    for (const auto& [key, value] : obj.items()) {
        if (!value.is_array() || (value.size() != 3 && value.size() != 4))
            throw ValidationError(what + " entries must be [x,y,z] or [x,y,z,w] arrays");
        for (const auto& coord : value)
            if (!coord.is_number()) throw ValidationError(what + " coordinates must be numbers");
        DocumentPoint dp;
        dp.position = {require_finite(value[0].get<double>(), what),
                       require_finite(value[1].get<double>(), what),
                       require_finite(value[2].get<double>(), what)};
        if (value.size() == 4) {
            const double w = require_finite(value[3].get<double>(), what + " weight");
            if (w <= 0) throw ValidationError(what + " weights must be positive");
            dp.weight = w;
        }
        out.emplace(parse_point_key(key), dp);
    }
    return out;
}

}  // namespace detail

inline PatchDocument parse_document(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("document root must be a JSON object");
    PatchDocument doc;

    if (!j.contains("points") || !j["points"].is_array() || j["points"].empty())
        throw ValidationError("document requires a non-empty \"points\" array");
    for (const auto& entry : j["points"]) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer() ||
            !entry[1].is_number_integer())
            throw ValidationError("each point must be an integer pair [i, j]");
        doc.points.push_back({entry[0].get<std::int64_t>(), entry[1].get<std::int64_t>()});
    }

    doc.depth = j.value("depth", 1);
    if (doc.depth < 1) throw ValidationError("\"depth\" must be >= 1");

    if (j.contains("normalization")) {
        const auto& norm = j["normalization"];
        if (norm.is_string()) {
            const std::string tag = norm.get<std::string>();
            if (tag == "unit") {
                doc.normalization = UnitNormalization{};
            } else if (tag == "self_exponent") {
                doc.normalization = SelfExponentNormalization{};
            } else if (tag == "trapezoid_tensor") {
                const auto params = infer_trapezoid_parameters(doc.points);
                if (!params)
                    throw ValidationError(
                        "\"trapezoid_tensor\" requires the points to form a trapezoid family "
                        "{(i,j): 0<=j<=n, 0<=i<=m+p*n-p*j}");
                doc.normalization = *params;
            } else {
                throw ValidationError("unknown normalization tag '" + tag + "'");
            }
        } else if (norm.is_object()) {
            ExplicitNormalization ex;
            for (const auto& [key, value] : norm.items()) {
                if (!value.is_string())
                    throw ValidationError("explicit normalization values must be \"num/den\" strings");
                ex.constants.emplace(detail::parse_point_key(key),
                                     parse_fraction(value.get<std::string>()));
            }
            doc.normalization = std::move(ex);
        } else {
            throw ValidationError("\"normalization\" must be a tag string or an explicit map");
        }
    }

    if (j.contains("weights")) {
        const auto& w = j["weights"];
        if (w.is_string()) {
            if (w.get<std::string>() != "equal")
                throw ValidationError("\"weights\" must be \"equal\" or a map");
        } else if (w.is_object()) {
            doc.weights_equal = false;
            for (const auto& [key, value] : w.items()) {
                if (!value.is_number()) throw ValidationError("weight values must be numbers");
                const double weight = detail::require_finite(value.get<double>(), "weight");
                if (weight <= 0) throw ValidationError("weights must be positive");
                doc.weights.emplace(detail::parse_point_key(key), weight);
            }
        } else {
            throw ValidationError("\"weights\" must be \"equal\" or a map");
        }
    }

    if (j.contains("boundary")) {
        if (!j["boundary"].is_object()) throw ValidationError("\"boundary\" must be a map");
        doc.boundary = detail::parse_document_points(j["boundary"], "boundary");
    }
    if (j.contains("inner")) {
        if (!j["inner"].is_object()) throw ValidationError("\"inner\" must be a map");
        doc.inner = detail::parse_document_points(j["inner"], "inner");
    }

    if (j.contains("functional")) {
        const std::string f = j["functional"].get<std::string>();
        if (f == "quasi-harmonic") {
            doc.functional = EnergyFunctional::quasi_harmonic;
        } else if (f == "dirichlet") {
            doc.functional = EnergyFunctional::dirichlet;
        } else {
            throw ValidationError("\"functional\" must be \"quasi-harmonic\" or \"dirichlet\"");
        }
    }
    if (j.contains("weight_mode")) {
        const std::string m = j["weight_mode"].get<std::string>();
        if (m == "fixed_weights_points_only") {
            doc.weight_mode = WeightMode::fixed_weights_points_only;
        } else if (m == "full_mass_points") {
            doc.weight_mode = WeightMode::full_mass_points;
        } else {
            throw ValidationError(
                "\"weight_mode\" must be \"fixed_weights_points_only\" or \"full_mass_points\"");
        }
    }
    doc.exact_solve = j.value("exact_solve", false);
    doc.subdivisions = j.value("subdivisions", 8);
    if (doc.subdivisions < 1) throw ValidationError("\"subdivisions\" must be >= 1");
    doc.quadrature_order = j.value("quadrature_order", 8);
    if (doc.quadrature_order < 1) throw ValidationError("\"quadrature_order\" must be >= 1");
    return doc;
}

inline PatchDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("invalid JSON in '" + path + "': " + std::string(e.what()));
    }
    return parse_document(j);
}

/// The assembled problem: basis at depth, control net with boundary data
/// applied, and inner mass-points either taken from the document or
/// initialized to the boundary mean (the "before" state reported by solve).
struct AssembledPatch {
    ToricPatch patch;
    bool inner_from_document = false;  // every inner point had a document value
};

inline AssembledPatch build_patch(const PatchDocument& doc) {
    const LatticePolygon domain = convex_hull(doc.points);
    const BasisFunctionSet base = toric_basis(domain, doc.normalization);
    const BasisFunctionSet basis = depth_basis(base, doc.depth);
    const auto split = classify(basis.domain());

    if (!doc.weights_equal)
        for (const auto& [pt, weight] : doc.weights)
            if (!basis.functions().contains(pt))
                throw ValidationError("weights key (" + to_string(pt) +
                                      ") is not a lattice point of the index set");

    const auto resolved_weight = [&](LatticePoint pt, const std::optional<double>& override_w) {
        if (override_w) return *override_w;
        if (doc.weights_equal) return 1.0;
        const auto it = doc.weights.find(pt);
        if (it == doc.weights.end())
            throw ValidationError("weights map missing entry for (" + to_string(pt) + ")");
        return it->second;
    };

    std::map<LatticePoint, MassPoint> control;

    for (const auto& [pt, dp] : doc.boundary) {
        if (!basis.functions().contains(pt))
            throw ValidationError("boundary entry (" + to_string(pt) +
                                  ") is not a lattice point of the depth-" +
                                  std::to_string(doc.depth) + " index set");
        const bool on_boundary =
            std::find(split.boundary.begin(), split.boundary.end(), pt) != split.boundary.end();
        if (!on_boundary)
            throw ValidationError("(" + to_string(pt) +
                                  ") is an inner point; inner mass-points are unknowns and belong "
                                  "in \"inner\", not \"boundary\"");
        control.emplace(pt, MassPoint::from_point(dp.position, resolved_weight(pt, dp.weight)));
    }
    for (const auto& pt : split.boundary)
        if (!control.contains(pt))
            throw ValidationError("boundary mass-point missing for (" + to_string(pt) + ")");

    for (const auto& [pt, dp] : doc.inner)
        if (std::find(split.inner.begin(), split.inner.end(), pt) == split.inner.end())
            throw ValidationError("\"inner\" entry (" + to_string(pt) +
                                  ") is not an inner lattice point of the index set");

    // placeholder for unknown inner points: the mean boundary point
    Vec3 mean{0, 0, 0};
    for (const auto& pt : split.boundary) mean = mean + control.at(pt).point();
    mean = mean / double(split.boundary.size());

    bool all_inner_given = !split.inner.empty();
    for (const auto& pt : split.inner) {
        const auto it = doc.inner.find(pt);
        if (it != doc.inner.end()) {
            control.emplace(pt, MassPoint::from_point(it->second.position,
                                                      resolved_weight(pt, it->second.weight)));
        } else {
            control.emplace(pt, MassPoint::from_point(
                                    mean, resolved_weight(pt, std::nullopt)));
            all_inner_given = false;
        }
    }

    return {ToricPatch(basis, std::move(control)), all_inner_given};
}

namespace detail {

inline nlohmann::json document_point_to_json(const DocumentPoint& dp) {
    nlohmann::json arr = {dp.position.x, dp.position.y, dp.position.z};
    if (dp.weight) arr.push_back(*dp.weight);
    return arr;
}

}  // namespace detail

/// Serializes a document (plus optional solved inner values and report) back
/// to JSON. Key order is alphabetical and doubles use shortest round-trip
/// form, so identical inputs give byte-identical output.
inline nlohmann::json document_to_json(const PatchDocument& doc,
                                       const ToricPatch* solved = nullptr,
                                       const RunReport* report = nullptr) {
    nlohmann::json j;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : doc.points) pts.push_back({p.i, p.j});
    j["points"] = std::move(pts);
    j["depth"] = doc.depth;

    if (const auto* ex = std::get_if<ExplicitNormalization>(&doc.normalization)) {
        nlohmann::json norm;
        for (const auto& [pt, c] : ex->constants) norm[to_string(pt)] = to_fraction_string(c);
        j["normalization"] = std::move(norm);
    } else {
        j["normalization"] = normalization_tag(doc.normalization);
    }

    if (doc.weights_equal) {
        j["weights"] = "equal";
    } else {
        nlohmann::json w;
        for (const auto& [pt, weight] : doc.weights) w[to_string(pt)] = weight;
        j["weights"] = std::move(w);
    }

    nlohmann::json boundary = nlohmann::json::object();
    for (const auto& [pt, dp] : doc.boundary)
        boundary[to_string(pt)] = detail::document_point_to_json(dp);
    j["boundary"] = std::move(boundary);

    j["functional"] = to_string(doc.functional);
    j["weight_mode"] = to_string(doc.weight_mode);
    j["exact_solve"] = doc.exact_solve;
    j["subdivisions"] = doc.subdivisions;
    j["quadrature_order"] = doc.quadrature_order;

    if (solved) {
        nlohmann::json inner = nlohmann::json::object();
        const bool full = doc.weight_mode == WeightMode::full_mass_points;
        for (const auto& pt : solved->inner_keys()) {
            const MassPoint& m = solved->mass_point(pt);
            DocumentPoint dp{m.point(), full ? std::optional<double>(m.w) : std::nullopt};
            inner[to_string(pt)] = detail::document_point_to_json(dp);
        }
        j["inner"] = std::move(inner);
    }
    if (report) {
        j["report"] = {{"normalization", report->normalization},
                       {"functional", report->functional},
                       {"weight_mode", report->weight_mode},
                       {"energy_before", report->energy_before},
                       {"energy_after", report->energy_after},
                       {"residual", report->residual},
                       {"condition", report->condition},
                       {"elapsed_seconds", report->elapsed_seconds}};
    }
    return j;
}

}  // namespace toric
