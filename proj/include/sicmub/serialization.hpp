#pragma once

#include <cstdio>

#include <json.hpp>

#include "sicmub/coloring.hpp"
#include "sicmub/incidence.hpp"
#include "sicmub/inequality.hpp"
#include "sicmub/verify.hpp"

namespace sicmub {

// All certificate payloads use insertion-ordered JSON so output is
// byte-stable; every rational is serialized as a "p/q" string.
using json = nlohmann::ordered_json;

inline json rational_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const json& j) {
    if (!j.is_string()) throw ParseError("expected a \"p/q\" string, got: " + j.dump());
    return Rational::parse(j.get<std::string>());
}

inline json eis_json(const EisensteinRational& x) {
    return json{{"a", x.a().str()}, {"b", x.b().str()}};
}

inline EisensteinRational eis_from_json(const json& j) {
    if (!j.is_object() || !j.contains("a") || !j.contains("b"))
        throw ParseError("expected {\"a\": \"p/q\", \"b\": \"p/q\"}, got: " + j.dump());
    return {rational_from_json(j.at("a")), rational_from_json(j.at("b"))};
}

inline json label_json(const RayLabel& label) {
    if (const auto* s = std::get_if<SicLabel>(&label))
        return json{{"type", "sic"}, {"row", s->row}, {"col", s->col}};
    const auto& m = std::get<MubLabel>(label);
    return json{{"type", "mub"}, {"basis", std::string(basis_name(m.basis))}, {"element", m.element}};
}

inline json ray_json(const Ray& ray) {
    json coords = json::array();
    for (const auto& c : ray.coords) coords.push_back(eis_json(c));
    return json{{"id", ray.id}, {"label", label_json(ray.label)}, {"coords", coords}, {"norm_sq", ray.norm_sq.str()}};
}

inline json config_json(const Configuration& config) {
    json rays = json::array();
    for (const Ray& ray : config.rays) rays.push_back(ray_json(ray));
    json bases = json::array();
    for (const Basis& basis : config.bases) {
        bases.push_back(json{{"name", std::string(basis_name(basis.name))},
                             {"members", json::array({basis.members[0], basis.members[1], basis.members[2]})}});
    }
    return json{{"rays", rays}, {"bases", bases}};
}

// Accepts the config_json schema. The id scheme is fixed: labels (and the
// optional bases block) must match it, while coordinates are free, so
// alternative ray sets can be fed to the downstream engines. norm_sq is
// recomputed from the coordinates.
inline Configuration config_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rays") || !j.at("rays").is_array() || j.at("rays").size() != kRayCount)
        throw ParseError("configuration needs a \"rays\" array with 21 entries");

    std::array<Vec3, kRayCount> coords;
    for (int id = 0; id < kRayCount; ++id) {
        const json& entry = j.at("rays").at(static_cast<std::size_t>(id));
        if (!entry.is_object() || !entry.contains("id") || !entry.contains("coords"))
            throw ParseError("ray entry " + std::to_string(id) + " needs \"id\" and \"coords\"");
        if (entry.at("id").get<int>() != id)
            throw ParseError("ray ids must be 0..20 in order; entry " + std::to_string(id) + " has id " +
                             entry.at("id").dump());
        const json& cj = entry.at("coords");
        if (!cj.is_array() || cj.size() != 3) throw ParseError("ray " + std::to_string(id) + " needs 3 coords");
        for (int k = 0; k < 3; ++k)
            coords[static_cast<std::size_t>(id)][static_cast<std::size_t>(k)] = eis_from_json(cj.at(static_cast<std::size_t>(k)));
        if (entry.contains("label") && entry.at("label") != label_json(label_for_id(id)))
            throw ParseError("ray " + std::to_string(id) + " label does not match the fixed id scheme");
    }

    Configuration config;
    try {
        config = configuration_from_coords(coords);
    } catch (const std::domain_error& e) {
        throw ParseError(std::string("invalid configuration: ") + e.what());
    }

    if (j.contains("bases")) {
        if (j.at("bases") != config_json(config).at("bases"))
            throw ParseError("bases block does not match the fixed id scheme");
    }
    return config;
}

// Weights file: either an array of 21 "p/q" strings indexed by ray id, or an
// object keyed by the decimal ray id.
inline std::vector<Rational> weights_from_json(const json& j, int n) {
    std::vector<Rational> weights(static_cast<std::size_t>(n), Rational(0));
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    if (j.is_array()) {
        if (static_cast<int>(j.size()) != n)
            throw ParseError("weights array must have " + std::to_string(n) + " entries");
        for (int i = 0; i < n; ++i) {
            weights[static_cast<std::size_t>(i)] = rational_from_json(j.at(static_cast<std::size_t>(i)));
            seen[static_cast<std::size_t>(i)] = true;
        }
    } else if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            int id = 0;
            try {
                id = std::stoi(key);
            } catch (const std::exception&) {
                throw ParseError("weights key is not a ray id: '" + key + "'");
            }
            if (id < 0 || id >= n) throw ParseError("weights key out of range: '" + key + "'");
            weights[static_cast<std::size_t>(id)] = rational_from_json(value);
            seen[static_cast<std::size_t>(id)] = true;
        }
    } else {
        throw ParseError("weights must be a JSON array or object");
    }
    for (int i = 0; i < n; ++i)
        if (!seen[static_cast<std::size_t>(i)]) throw ParseError("missing weight for ray " + std::to_string(i));
    return weights;
}

inline json assignment_json(const TriStateAssignment& a) {
    json arr = json::array();
    for (Truth t : a.value) arr.push_back(std::string(1, truth_char(t)));
    return arr;
}

inline json coloring_json(const FullColoring& c, int n) {
    json arr = json::array();
    for (int i = 0; i < n; ++i) arr.push_back(c.is_true(i) ? "1" : "0");
    return arr;
}

inline json choice_stats_json(const Configuration& config, const CompatGraph& graph, const ChoiceStats& stats) {
    json histogram = json::object();
    for (const auto& [undetermined, count] : stats.histogram) histogram[std::to_string(undetermined)] = count;
    json choices = json::array();
    for (const ChoiceOutcome& outcome : stats.outcomes) {
        TriStateAssignment assignment = propagate(config, graph, outcome.choice);
        choices.push_back(json{
            {"choice", json::array({outcome.choice.element[0], outcome.choice.element[1], outcome.choice.element[2],
                                    outcome.choice.element[3]})},
            {"true_rays", json::array({outcome.true_rays[0], outcome.true_rays[1], outcome.true_rays[2],
                                       outcome.true_rays[3]})},
            {"assignment", assignment_json(assignment)},
            {"undetermined_sic", outcome.undetermined_sic},
            {"undetermined_count", outcome.undetermined_sic.size()},
        });
    }
    return json{{"histogram", histogram}, {"choices", choices}};
}

inline json figure_json(const FigureData& fig) {
    json grid = json::array();
    for (int r = 0; r < 3; ++r) {
        json row = json::array();
        for (int c = 0; c < 3; ++c)
            row.push_back(std::string(1, truth_char(fig.cell_state[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)])));
        grid.push_back(row);
    }
    json lines = json::array();
    for (const FigureLine& line : fig.lines) {
        json cells = json::array();
        for (auto [r, c] : line.cells) cells.push_back(json::array({r, c}));
        lines.push_back(json{{"basis", std::string(basis_name(line.basis))},
                             {"element", line.element},
                             {"solid", line.solid},
                             {"cells", cells}});
    }
    return json{{"choice", json::array({fig.choice.element[0], fig.choice.element[1], fig.choice.element[2],
                                        fig.choice.element[3]})},
                {"grid", grid},
                {"lines", lines}};
}

inline json incidence_json(const IncidenceReport& report) {
    json partitions = json::array();
    for (int b = 0; b < 4; ++b) {
        json triples = json::array();
        for (const Triple& t : report.hesse_partitions[static_cast<std::size_t>(b)])
            triples.push_back(json::array({t[0], t[1], t[2]}));
        partitions.push_back(json{{"basis", std::string(basis_name(static_cast<MubBasis>(b)))}, {"triples", triples}});
    }
    json maximal = json::array();
    for (const Triple& t : report.maximal_triples) maximal.push_back(json::array({t[0], t[1], t[2]}));
    return json{{"unordered_edge_count", report.unordered_edge_count},
                {"degree_by_ray", report.degree_by_ray},
                {"hesse_partitions", partitions},
                {"maximal_triples", maximal}};
}

inline json check_report_json(const CheckReport& report) {
    json checks = json::array();
    for (const Check& c : report.checks) checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return json{{"pass", report.all_pass()}, {"checks", checks}};
}

inline json bound_json(const InequalitySpec& spec, const BoundCertificate& cert) {
    json weights = json::array();
    for (const Rational& w : spec.weights) weights.push_back(w.str());
    return json{
        {"convention", std::string(kSumConvention)},
        {"k", spec.k.str()},
        {"weights", weights},
        {"classical_max", cert.classical_max.str()},
        {"witness_count", cert.witness_count},
        {"first_witness", cert.first_witness.pm_string(spec.graph.size())},
        {"quantum_value", cert.quantum_value.str()},
        {"quantum_is_scalar", cert.quantum_is_scalar},
        {"violation", cert.violation},
        {"display",
         json{{"classical_max", cert.classical_max.to_double()},
              {"quantum_value", cert.quantum_value.to_double()},
              {"gap", (cert.quantum_value - cert.classical_max).to_double()}}},
    };
}

inline json window_json(const WindowAnalysis& window) {
    json j{{"empty", window.empty}};
    j["lower"] = window.lower ? json(window.lower->str()) : json(nullptr);
    j["upper"] = window.upper ? json(window.upper->str()) : json(nullptr);
    if (window.lower) j["classical_equals_quantum_at_lower"] = window.classical_equals_quantum_at_lower;
    if (window.upper) j["classical_equals_quantum_at_upper"] = window.classical_equals_quantum_at_upper;
    j["quantum_const"] = window.quantum_const.str();
    j["quantum_slope"] = window.quantum_slope.str();
    return j;
}

// FNV-1a over the canonical configuration JSON; stable across runs.
inline std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string config_hash(const Configuration& config) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(config_json(config).dump())));
    return std::string("fnv1a64:") + buf;
}

}  // namespace sicmub
