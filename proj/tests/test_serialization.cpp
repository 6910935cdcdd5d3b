#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>

#include "sicmub/certificate.hpp"
#include "sicmub/serialization.hpp"

using namespace sicmub;

namespace {

// No raw JSON float may appear outside a "display" block.
void check_no_floats(const json& node) {
    REQUIRE_FALSE(node.is_number_float());
    if (node.is_object()) {
        for (const auto& [key, value] : node.items()) {
            if (key == "display") continue;
            check_no_floats(value);
        }
    } else if (node.is_array()) {
        for (const auto& value : node) check_no_floats(value);
    }
}

}  // namespace

TEST_CASE("configuration JSON round trip", "[serialization]") {
    const Configuration config = build_configuration();
    json j = config_json(config);

    REQUIRE(j.at("rays").size() == 21);
    REQUIRE(j.at("bases").size() == 4);
    CHECK(j.at("rays").at(0).at("norm_sq") == "2/1");
    CHECK(j.at("rays").at(13).at("label") == json({{"type", "mub"}, {"basis", "inf"}, {"element", 1}}));

    Configuration back = config_from_json(j);
    CHECK(config_json(back) == j);
    CHECK(config_hash(back) == config_hash(config));
}

TEST_CASE("configuration JSON validation", "[serialization]") {
    const Configuration config = build_configuration();

    SECTION("wrong ray count") {
        json j = config_json(config);
        j["rays"].erase(20);
        CHECK_THROWS_AS(config_from_json(j), ParseError);
    }
    SECTION("out-of-order ids") {
        json j = config_json(config);
        j["rays"][0]["id"] = 1;
        CHECK_THROWS_AS(config_from_json(j), ParseError);
    }
    SECTION("label inconsistent with the id scheme") {
        json j = config_json(config);
        j["rays"][0]["label"] = json{{"type", "sic"}, {"row", 2}, {"col", 2}};
        CHECK_THROWS_AS(config_from_json(j), ParseError);
    }
    SECTION("malformed coordinate") {
        json j = config_json(config);
        j["rays"][3]["coords"][1] = json{{"a", "x"}, {"b", "0/1"}};
        CHECK_THROWS_AS(config_from_json(j), ParseError);
    }
    SECTION("zero ray") {
        json j = config_json(config);
        for (int k = 0; k < 3; ++k) j["rays"][5]["coords"][k] = json{{"a", "0/1"}, {"b", "0/1"}};
        CHECK_THROWS_AS(config_from_json(j), ParseError);
    }
    SECTION("bases block must match the scheme") {
        json j = config_json(config);
        j["bases"][0]["members"] = json::array({9, 10, 12});
        CHECK_THROWS_AS(config_from_json(j), ParseError);
    }
    SECTION("tampered coordinates still parse; verification catches them") {
        json j = config_json(config);
        j["rays"][0]["coords"][1] = json{{"a", "0/1"}, {"b", "1/1"}};  // (0,1,-1) -> (0,w,-1)
        Configuration tampered = config_from_json(j);
        CHECK_FALSE(verify_sic_mub(tampered).all_pass());
        CHECK(config_hash(tampered) != config_hash(config));
    }
    SECTION("norm_sq on input is recomputed, not trusted") {
        json j = config_json(config);
        j["rays"][0]["norm_sq"] = "999/1";
        Configuration back = config_from_json(j);
        CHECK(back.ray(0).norm_sq == Rational(2));
    }
}

TEST_CASE("eisenstein JSON round trip", "[serialization]") {
    std::mt19937 rng(9200);
    std::uniform_int_distribution<std::int64_t> num(-9, 9);
    std::uniform_int_distribution<std::int64_t> den(1, 9);
    for (int trial = 0; trial < 100; ++trial) {
        EisensteinRational x(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
        CHECK(eis_from_json(eis_json(x)) == x);
    }
    CHECK_THROWS_AS(eis_from_json(json::parse("{\"a\": \"1/2\"}")), ParseError);
    CHECK_THROWS_AS(eis_from_json(json::parse("[1, 2]")), ParseError);
}

TEST_CASE("weights files", "[serialization]") {
    json arr = json::array();
    for (int i = 0; i < 21; ++i) arr.push_back("1/1");
    std::vector<Rational> w = weights_from_json(arr, 21);
    CHECK(w.size() == 21);
    CHECK(w[20] == Rational(1));

    json obj = json::object();
    for (int i = 0; i < 21; ++i) obj[std::to_string(i)] = i == 3 ? "-2/7" : "1/1";
    std::vector<Rational> w2 = weights_from_json(obj, 21);
    CHECK(w2[3] == Rational(-2, 7));

    json short_arr = json::array();
    for (int i = 0; i < 20; ++i) short_arr.push_back("1/1");
    CHECK_THROWS_AS(weights_from_json(short_arr, 21), ParseError);

    json missing = json::object();
    for (int i = 0; i < 20; ++i) missing[std::to_string(i)] = "1/1";
    CHECK_THROWS_AS(weights_from_json(missing, 21), ParseError);

    json bad_key = json::object();
    for (int i = 0; i < 21; ++i) bad_key[std::to_string(i)] = "1/1";
    bad_key["x"] = "1/1";
    CHECK_THROWS_AS(weights_from_json(bad_key, 21), ParseError);

    CHECK_THROWS_AS(weights_from_json(json("1/1"), 21), ParseError);
}

TEST_CASE("assignment and witness serialization", "[serialization]") {
    const Configuration config = build_configuration();
    const CompatGraph graph = build_graph(config);

    TriStateAssignment a = propagate(config, graph, BasisChoice{{0, 0, 0, 0}});
    json arr = assignment_json(a);
    REQUIRE(arr.size() == 21);
    for (const auto& v : arr) {
        std::string s = v.get<std::string>();
        CHECK((s == "0" || s == "1" || s == "u"));
    }

    SignAssignment sa{0b101u};
    CHECK(sa.pm_string(4) == "+-+-");
    CHECK(sa.sign(0) == 1);
    CHECK(sa.sign(1) == -1);

    FullColoring fc{0b110u};
    CHECK(coloring_json(fc, 3) == json::array({"0", "1", "1"}));
}

TEST_CASE("choice statistics JSON", "[serialization]") {
    const Configuration config = build_configuration();
    const CompatGraph graph = build_graph(config);
    json j = choice_stats_json(config, graph, enumerate_choices(config, graph));

    CHECK(j.at("histogram") == json({{"0", 9}, {"2", 72}}));
    REQUIRE(j.at("choices").size() == 81);
    CHECK(j.at("choices").at(0).at("choice") == json::array({0, 0, 0, 0}));
    CHECK(j.at("choices").at(80).at("choice") == json::array({2, 2, 2, 2}));
    for (const auto& choice : j.at("choices")) REQUIRE(choice.at("assignment").size() == 21);
}

TEST_CASE("figure JSON", "[serialization]") {
    const Configuration config = build_configuration();
    const CompatGraph graph = build_graph(config);
    FigureData fig = figure_data(config, graph, canonical_sample_choice(config, graph));
    json j = figure_json(fig);

    REQUIRE(j.at("grid").size() == 3);
    for (const auto& row : j.at("grid")) REQUIRE(row.size() == 3);
    REQUIRE(j.at("lines").size() == 12);
    int solid = 0;
    for (const auto& line : j.at("lines")) {
        REQUIRE(line.at("cells").size() == 3);
        solid += line.at("solid").get<bool>() ? 1 : 0;
    }
    CHECK(solid == 4);
}

TEST_CASE("embedded manifest mirrors data/expected.json", "[serialization]") {
    std::ifstream file(std::string(SICMUB_DATA_DIR) + "/expected.json");
    REQUIRE(file.good());
    json on_disk = json::parse(file);
    CHECK(on_disk == expected_manifest());
}

TEST_CASE("certificate is deterministic and float free", "[serialization]") {
    const Configuration config = build_configuration();

    Certificate first = build_certificate(config);
    Certificate second = build_certificate(config);
    CHECK(first.overall_pass);
    CHECK(first.doc.dump(2) == second.doc.dump(2));

    CHECK(first.doc.at("tool_version") == std::string(kToolVersion));
    CHECK(first.doc.at("convention") == "ordered-pairs");
    CHECK(first.doc.at("configuration_hash").get<std::string>().rfind("fnv1a64:", 0) == 0);
    check_no_floats(first.doc);

    // Every section passes on the built-in configuration.
    for (const auto& [name, section] : first.doc.at("sections").items()) CHECK(section.at("pass") == true);
}

TEST_CASE("certificate flags a tampered configuration", "[serialization]") {
    json j = config_json(build_configuration());
    j["rays"][2]["coords"][1] = json{{"a", "2/1"}, {"b", "0/1"}};
    Configuration tampered = config_from_json(j);

    Certificate cert = build_certificate(tampered);
    CHECK_FALSE(cert.overall_pass);
    CHECK(cert.doc.at("sections").at("sic_mub").at("pass") == false);
}

TEST_CASE("bound JSON carries exact strings plus a display block", "[serialization]") {
    const Configuration config = build_configuration();
    const CompatGraph graph = build_graph(config);
    InequalitySpec spec = unit_spec(graph, Rational(1, 5));
    json j = bound_json(spec, bound_certificate(config, spec));

    CHECK(j.at("classical_max") == "63/5");
    CHECK(j.at("quantum_value") == "67/5");
    CHECK(j.at("violation") == true);
    CHECK(j.at("convention") == "ordered-pairs");
    CHECK(j.at("first_witness").get<std::string>().size() == 21);
    CHECK(j.at("display").at("classical_max").is_number_float());
    json no_display = j;
    no_display.erase("display");
    check_no_floats(no_display);
}

TEST_CASE("window JSON", "[serialization]") {
    const Configuration config = build_configuration();
    const CompatGraph graph = build_graph(config);
    const std::vector<Rational> unit_weights(21, Rational(1));
    json j = window_json(violation_window(config, graph, unit_weights));

    CHECK(j.at("empty") == false);
    CHECK(j.at("lower") == "1/8");
    CHECK(j.at("upper") == "1/4");
    CHECK(j.at("classical_equals_quantum_at_lower") == true);
    CHECK(j.at("classical_equals_quantum_at_upper") == true);
}
