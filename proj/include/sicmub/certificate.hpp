#pragma once

#include "sicmub/serialization.hpp"

namespace sicmub {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Pinned expected values, mirroring data/expected.json (a unit test keeps the
// two in sync). Certification compares computed results against these, so a
// failing certificate names exactly which claim broke.
inline constexpr std::string_view kExpectedManifest = R"({
  "sic_sum_projectors_scalar": "3/1",
  "sic_pair_overlap": "1/4",
  "mub_cross_overlap": "1/3",
  "unordered_edge_count": 48,
  "sic_degree": 4,
  "mub_degree": 5,
  "maximal_triple_count": 4,
  "undetermined_histogram": {"0": 9, "2": 72},
  "sample_choice_false_count": 7,
  "sample_choice_undetermined_count": 2,
  "max_sic_true": 2,
  "ks_quantum_value": "3/1",
  "inequality_k": "1/5",
  "classical_max": "63/5",
  "quantum_value": "67/5",
  "window_lower": "1/8",
  "window_upper": "1/4",
  "no_violation_at": ["0/1", "1/8", "1/4", "1/2"],
  "violation_at": ["1/5", "3/16", "11/50"]
}
)";

inline json expected_manifest() { return json::parse(kExpectedManifest); }

struct Certificate {
    json doc;
    bool overall_pass = false;
};

namespace detail {

struct SectionBuilder {
    json checks = json::array();
    bool pass = true;

    void add(const std::string& name, const std::string& expected, const std::string& computed,
             const std::string& note = {}) {
        bool ok = expected == computed;
        pass = pass && ok;
        json entry{{"name", name}, {"pass", ok}, {"expected", expected}, {"computed", computed}};
        if (!note.empty()) entry["detail"] = note;
        checks.push_back(std::move(entry));
    }

    void add_bool(const std::string& name, bool ok, const std::string& note = {}) {
        pass = pass && ok;
        json entry{{"name", name}, {"pass", ok}};
        if (!note.empty()) entry["detail"] = note;
        checks.push_back(std::move(entry));
    }

    json finish() const { return json{{"pass", pass}, {"checks", checks}}; }
};

// A tampered configuration may break structural preconditions deep inside a
// section; that is a certification failure, not a crash.
template <typename Body>
json guarded_section(Body&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        return json{{"pass", false}, {"error", e.what()}, {"checks", json::array()}};
    }
}

}  // namespace detail

// Runs the whole certification pipeline against the pinned expected values.
// Deterministic: same configuration in, byte-identical certificate out.
inline Certificate build_certificate(const Configuration& config, unsigned num_threads = 0) {
    const json expected = expected_manifest();
    const CompatGraph graph = build_graph(config);
    Certificate cert;
    cert.doc = json{{"tool_version", std::string(kToolVersion)},
                    {"convention", std::string(kSumConvention)},
                    {"configuration_hash", config_hash(config)}};
    json sections = json::object();

    // Ray-set identities.
    sections["sic_mub"] = detail::guarded_section([&]() -> json {
        detail::SectionBuilder section;
        CheckReport report = verify_sic_mub(config);
        for (const Check& c : report.checks) section.add_bool(c.name, c.pass, c.detail);
        auto sum_scalar = sum_projectors(config, Configuration::sic_ids()).scalar_of_identity();
        section.add("sic_sum_projectors_scalar", expected.at("sic_sum_projectors_scalar").get<std::string>(),
                    sum_scalar && sum_scalar->is_real() ? sum_scalar->a().str() : "not-scalar");

        // The common value of all 36 distinct SIC pair overlaps, and of all
        // 54 cross-basis pairs; "not-uniform" if any pair disagrees.
        auto uniform_overlap = [&](auto&& pairs) -> std::string {
            std::optional<Rational> value;
            for (auto [i, j] : pairs) {
                Rational got = overlap_squared(config.ray(i), config.ray(j));
                if (!value) value = got;
                if (got != *value) return "not-uniform";
            }
            return value ? value->str() : "none";
        };
        std::vector<std::pair<int, int>> sic_pairs;
        for (int i = 0; i < kSicCount; ++i)
            for (int j = i + 1; j < kSicCount; ++j) sic_pairs.emplace_back(i, j);
        section.add("sic_pair_overlap", expected.at("sic_pair_overlap").get<std::string>(),
                    uniform_overlap(sic_pairs));
        std::vector<std::pair<int, int>> cross_pairs;
        for (std::size_t p = 0; p < 4; ++p)
            for (std::size_t r = p + 1; r < 4; ++r)
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b)
                        cross_pairs.emplace_back(config.bases[p].members[static_cast<std::size_t>(a)],
                                                 config.bases[r].members[static_cast<std::size_t>(b)]);
        section.add("mub_cross_overlap", expected.at("mub_cross_overlap").get<std::string>(),
                    uniform_overlap(cross_pairs));
        return section.finish();
    });

    // Orthogonality graph facts.
    sections["incidence"] = detail::guarded_section([&]() -> json {
        detail::SectionBuilder section;
        IncidenceReport report = incidence_report(config, graph);
        section.add("unordered_edge_count", expected.at("unordered_edge_count").dump(),
                    json(report.unordered_edge_count).dump());
        bool degrees_ok = true;
        for (int i = 0; i < kRayCount; ++i) {
            int want = i < kSicCount ? expected.at("sic_degree").get<int>() : expected.at("mub_degree").get<int>();
            degrees_ok = degrees_ok && report.degree_by_ray[static_cast<std::size_t>(i)] == want;
        }
        section.add_bool("degree_sequence", degrees_ok);
        section.add("maximal_triple_count", expected.at("maximal_triple_count").dump(),
                    json(static_cast<int>(report.maximal_triples.size())).dump());
        std::vector<Triple> basis_triples;
        for (const Basis& basis : config.bases) {
            Triple t{basis.members[0], basis.members[1], basis.members[2]};
            std::sort(t.begin(), t.end());
            basis_triples.push_back(t);
        }
        std::sort(basis_triples.begin(), basis_triples.end());
        std::vector<Triple> found = report.maximal_triples;
        std::sort(found.begin(), found.end());
        section.add_bool("maximal_triples_are_the_bases", found == basis_triples);
        json out = section.finish();
        out["report"] = incidence_json(report);
        return out;
    });

    // Truth-assignment propagation and the state-independent KS bound.
    sections["ks_coloring"] = detail::guarded_section([&]() -> json {
        detail::SectionBuilder section;
        ChoiceStats stats = enumerate_choices(config, graph);
        json histogram = json::object();
        for (const auto& [undetermined, count] : stats.histogram) histogram[std::to_string(undetermined)] = count;
        section.add("undetermined_histogram", expected.at("undetermined_histogram").dump(), histogram.dump());

        BasisChoice sample = canonical_sample_choice(config, graph);
        TriStateAssignment assignment = propagate(config, graph, sample);
        section.add("sample_choice_false_count", expected.at("sample_choice_false_count").dump(),
                    json(static_cast<int>(assignment.sic_ids_with(Truth::False).size())).dump());
        section.add("sample_choice_undetermined_count", expected.at("sample_choice_undetermined_count").dump(),
                    json(static_cast<int>(assignment.sic_ids_with(Truth::Undetermined).size())).dump());

        MaxSicTrueResult max_result = max_sic_true(config, graph);
        section.add("max_sic_true", expected.at("max_sic_true").dump(), json(max_result.max_true).dump());
        std::vector<Triple> triples;
        for (const Basis& basis : config.bases) triples.push_back({basis.members[0], basis.members[1], basis.members[2]});
        section.add_bool("max_sic_true_witness_valid", is_valid_coloring(graph, triples, max_result.witness));

        bool ks_value_ok = quantum_ks_value(config, DensityMatrix::maximally_mixed()) ==
                           Rational::parse(expected.at("ks_quantum_value").get<std::string>());
        for (int id = 0; id < kRayCount && ks_value_ok; ++id)
            ks_value_ok = quantum_ks_value(config, DensityMatrix::pure(config.ray(id))) ==
                          Rational::parse(expected.at("ks_quantum_value").get<std::string>());
        section.add_bool("ks_quantum_value_state_independent", ks_value_ok,
                         "checked for the maximally mixed state and all 21 ray projectors");
        json out = section.finish();
        out["sample_choice"] = json::array({sample.element[0], sample.element[1], sample.element[2], sample.element[3]});
        out["max_sic_true_witness"] = coloring_json(max_result.witness, kRayCount);
        return out;
    });

    // Noncontextual inequality: classical bound, quantum operator, window.
    sections["inequality"] = detail::guarded_section([&]() -> json {
        detail::SectionBuilder section;
        const Rational k = Rational::parse(expected.at("inequality_k").get<std::string>());
        InequalitySpec spec = unit_spec(graph, k);
        BoundCertificate bound = bound_certificate(config, spec, num_threads);
        section.add("classical_max", expected.at("classical_max").get<std::string>(), bound.classical_max.str());
        section.add_bool("classical_max_witness_attains",
                         classical_value(bound.first_witness, spec) == bound.classical_max,
                         "witness " + bound.first_witness.pm_string(kRayCount));
        section.add_bool("quantum_operator_is_scalar", bound.quantum_is_scalar);
        section.add("quantum_value", expected.at("quantum_value").get<std::string>(), bound.quantum_value.str());
        section.add_bool("violation", bound.violation);

        std::vector<Rational> unit_weights(kRayCount, Rational(1));
        WindowAnalysis window = violation_window(config, graph, unit_weights);
        section.add_bool("window_nonempty", !window.empty);
        section.add("window_lower", expected.at("window_lower").get<std::string>(),
                    window.lower ? window.lower->str() : "none");
        section.add("window_upper", expected.at("window_upper").get<std::string>(),
                    window.upper ? window.upper->str() : "none");
        bool spot_ok = true;
        std::string spot_note;
        for (const auto& kj : expected.at("no_violation_at")) {
            Rational kk = Rational::parse(kj.get<std::string>());
            if (window.violates(kk)) {
                spot_ok = false;
                spot_note = "unexpected violation at k = " + kk.str();
            }
        }
        for (const auto& kj : expected.at("violation_at")) {
            Rational kk = Rational::parse(kj.get<std::string>());
            if (!window.violates(kk)) {
                spot_ok = false;
                spot_note = "missing violation at k = " + kk.str();
            }
        }
        section.add_bool("window_spot_checks", spot_ok, spot_note);
        json out = section.finish();
        out["first_witness"] = bound.first_witness.pm_string(kRayCount);
        out["witness_count"] = bound.witness_count;
        out["window"] = window_json(window);
        return out;
    });

    bool overall = true;
    for (const auto& [name, section] : sections.items()) overall = overall && section.at("pass").get<bool>();
    cert.doc["sections"] = sections;
    cert.doc["overall_pass"] = overall;
    cert.overall_pass = overall;
    return cert;
}

}  // namespace sicmub
