// Command-line certification pipeline for the 21-ray SIC + MUB configuration.
// Standard output carries JSON only; progress notes go to standard error.
// Exit codes: 0 pass, 1 certification failure, 2 usage or parse error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sicmub/sicmub.hpp"

namespace {

using sicmub::json;

sicmub::Configuration load_configuration(const std::string& path) {
    if (path.empty()) return sicmub::build_configuration();
    std::ifstream file(path);
    if (!file.good()) throw sicmub::ParseError("cannot open configuration file: " + path);
    json j;
    try {
        j = json::parse(file);
    } catch (const nlohmann::json::parse_error& e) {
        throw sicmub::ParseError("configuration file is not valid JSON: " + std::string(e.what()));
    }
    return sicmub::config_from_json(j);
}

std::vector<sicmub::Rational> load_weights(const std::string& path) {
    if (path.empty()) return std::vector<sicmub::Rational>(sicmub::kRayCount, sicmub::Rational(1));
    std::ifstream file(path);
    if (!file.good()) throw sicmub::ParseError("cannot open weights file: " + path);
    json j;
    try {
        j = json::parse(file);
    } catch (const nlohmann::json::parse_error& e) {
        throw sicmub::ParseError("weights file is not valid JSON: " + std::string(e.what()));
    }
    return sicmub::weights_from_json(j, sicmub::kRayCount);
}

sicmub::BasisChoice parse_choice(const std::string& text) {
    std::array<int, 4> element{};
    std::size_t pos = 0;
    for (int b = 0; b < 4; ++b) {
        std::size_t comma = b < 3 ? text.find(',', pos) : text.size();
        if (comma == std::string::npos) throw sicmub::ParseError("choice needs 4 comma-separated elements");
        std::string part = text.substr(pos, comma - pos);
        if (part != "0" && part != "1" && part != "2")
            throw sicmub::ParseError("choice element out of range: '" + part + "'");
        element[static_cast<std::size_t>(b)] = part[0] - '0';
        pos = comma + 1;
    }
    return sicmub::BasisChoice{element};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int run_verify_all(const std::string& config_path) {
    sicmub::Configuration config = load_configuration(config_path);
    std::cerr << "[sicmub] certifying against the pinned expected values\n";
    sicmub::Certificate cert = sicmub::build_certificate(config);
    emit(cert.doc);
    if (!cert.overall_pass) {
        for (const auto& [name, section] : cert.doc.at("sections").items())
            if (section.at("pass") == false) std::cerr << "[sicmub] section failed: " << name << "\n";
        return 1;
    }
    return 0;
}

int run_bound(const std::string& config_path, const std::string& k_text, const std::string& weights_path) {
    sicmub::Configuration config = load_configuration(config_path);
    sicmub::Rational k = sicmub::Rational::parse(k_text);
    std::vector<sicmub::Rational> weights = load_weights(weights_path);
    sicmub::CompatGraph graph = sicmub::build_graph(config);
    sicmub::InequalitySpec spec(graph, weights, k);
    std::cerr << "[sicmub] exhaustive search over 2^" << graph.size() << " sign assignments\n";
    emit(sicmub::bound_json(spec, sicmub::bound_certificate(config, spec)));
    return 0;
}

int run_colorings(const std::string& config_path) {
    sicmub::Configuration config = load_configuration(config_path);
    sicmub::CompatGraph graph = sicmub::build_graph(config);
    emit(sicmub::choice_stats_json(config, graph, sicmub::enumerate_choices(config, graph)));
    return 0;
}

int run_graph(const std::string& config_path, const std::string& format) {
    sicmub::Configuration config = load_configuration(config_path);
    sicmub::CompatGraph graph = sicmub::build_graph(config);
    sicmub::GraphFormat f = format == "dot" ? sicmub::GraphFormat::Dot : sicmub::GraphFormat::Json;
    std::cout << sicmub::export_graph(config, graph, f);
    return 0;
}

int run_sweep(const std::string& config_path, const std::string& kmin_text, const std::string& kmax_text,
              int steps) {
    sicmub::Configuration config = load_configuration(config_path);
    sicmub::Rational kmin = sicmub::Rational::parse(kmin_text);
    sicmub::Rational kmax = sicmub::Rational::parse(kmax_text);
    if (kmax < kmin) throw sicmub::ParseError("--k-max must not be below --k-min");

    sicmub::CompatGraph graph = sicmub::build_graph(config);
    std::vector<sicmub::Rational> unit_weights(sicmub::kRayCount, sicmub::Rational(1));
    std::cerr << "[sicmub] collecting the classical envelope\n";
    sicmub::WindowAnalysis window = sicmub::violation_window(config, graph, unit_weights);

    json rows = json::array();
    for (int j = 0; j <= steps; ++j) {
        sicmub::Rational k = kmin + (kmax - kmin) * sicmub::Rational(j, steps == 0 ? 1 : steps);
        rows.push_back(json{{"k", k.str()},
                            {"classical_max", window.classical_max_at(k).str()},
                            {"quantum", window.quantum_at(k).str()},
                            {"violation", window.violates(k)}});
        if (j == 0 && steps == 0) break;
    }
    emit(json{{"window", sicmub::window_json(window)}, {"rows", rows}});
    return 0;
}

int run_config(const std::string& config_path) {
    emit(sicmub::config_json(load_configuration(config_path)));
    return 0;
}

int run_figures(const std::string& config_path, const std::string& choice_text) {
    sicmub::Configuration config = load_configuration(config_path);
    sicmub::CompatGraph graph = sicmub::build_graph(config);
    sicmub::BasisChoice choice = choice_text.empty() ? sicmub::canonical_sample_choice(config, graph)
                                                     : parse_choice(choice_text);
    emit(sicmub::figure_json(sicmub::figure_data(config, graph, choice)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact certification of the 21-ray SIC + MUB contextuality configuration"};
    app.require_subcommand(1);

    std::string config_path, k_text = "1/5", weights_path, format = "dot";
    std::string kmin_text = "0", kmax_text = "1/2", choice_text;
    int steps = 8;

    auto* verify_all = app.add_subcommand("verify-all", "run every certification and emit a certificate");
    verify_all->add_option("--config", config_path, "configuration JSON (default: built-in rays)");

    auto* bound = app.add_subcommand("bound", "classical and quantum bounds for one coefficient");
    bound->add_option("--k", k_text, "quadratic coefficient as p/q")->required();
    bound->add_option("--weights", weights_path, "JSON file with 21 p/q weights keyed by ray id");
    bound->add_option("--config", config_path, "configuration JSON (default: built-in rays)");

    auto* colorings = app.add_subcommand("colorings", "truth-value propagation for all 81 basis choices");
    colorings->add_option("--config", config_path, "configuration JSON (default: built-in rays)");

    auto* graph_cmd = app.add_subcommand("graph", "export the orthogonality graph");
    graph_cmd->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
    graph_cmd->add_option("--config", config_path, "configuration JSON (default: built-in rays)");

    auto* sweep = app.add_subcommand("sweep", "classical vs quantum value across a coefficient range");
    sweep->add_option("--k-min", kmin_text, "lower end of the range as p/q")->required();
    sweep->add_option("--k-max", kmax_text, "upper end of the range as p/q")->required();
    sweep->add_option("--steps", steps, "number of sample intervals (default 8)")->check(CLI::NonNegativeNumber);
    sweep->add_option("--config", config_path, "configuration JSON (default: built-in rays)");

    auto* figures = app.add_subcommand("figures", "grid-and-lines description of one basis choice");
    figures->add_option("--choice", choice_text, "four comma-separated element indices, e.g. 0,0,1,2");
    figures->add_option("--config", config_path, "configuration JSON (default: built-in rays)");

    auto* config_cmd = app.add_subcommand("config", "emit the ray configuration JSON (a template for --config)");
    config_cmd->add_option("--config", config_path, "round-trip an external configuration instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(verify_all)) return run_verify_all(config_path);
        if (app.got_subcommand(bound)) return run_bound(config_path, k_text, weights_path);
        if (app.got_subcommand(colorings)) return run_colorings(config_path);
        if (app.got_subcommand(graph_cmd)) return run_graph(config_path, format);
        if (app.got_subcommand(sweep)) return run_sweep(config_path, kmin_text, kmax_text, steps);
        if (app.got_subcommand(figures)) return run_figures(config_path, choice_text);
        if (app.got_subcommand(config_cmd)) return run_config(config_path);
    } catch (const sicmub::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
