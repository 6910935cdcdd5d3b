#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>
#include <vector>

#include "sicmub/rays.hpp"

namespace sicmub {

// Symmetric orthogonality graph, adjacency stored as bitmask rows. Two
// distinct projective measurements commute iff their rays are orthogonal, so
// edges double as the compatibility relation. Supports up to 32 vertices.
class CompatGraph {
  public:
    explicit CompatGraph(int n) : n_(n) {
        if (n < 0 || n > 32) throw std::domain_error("graph size out of range");
    }

    int size() const { return n_; }

    void add_edge(int i, int j) {
        check_vertex(i);
        check_vertex(j);
        if (i == j) throw std::domain_error("no self loops");
        adj_[static_cast<std::size_t>(i)] |= 1u << j;
        adj_[static_cast<std::size_t>(j)] |= 1u << i;
    }

    bool adjacent(int i, int j) const {
        check_vertex(i);
        check_vertex(j);
        return (adj_[static_cast<std::size_t>(i)] >> j) & 1u;
    }

    std::uint32_t row(int i) const {
        check_vertex(i);
        return adj_[static_cast<std::size_t>(i)];
    }

    int degree(int i) const { return std::popcount(row(i)); }

    int edge_count() const {
        int total = 0;
        for (int i = 0; i < n_; ++i) total += degree(i);
        return total / 2;
    }

    // Unordered pairs (i, j), i < j, lexicographically sorted.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> result;
        for (int i = 0; i < n_; ++i) {
            std::uint32_t hi = i + 1 < 32 ? (adj_[static_cast<std::size_t>(i)] >> (i + 1)) << (i + 1) : 0u;
            while (hi != 0) {
                int j = std::countr_zero(hi);
                hi &= hi - 1;
                result.emplace_back(i, j);
            }
        }
        return result;
    }

    bool operator==(const CompatGraph&) const = default;

  private:
    void check_vertex(int i) const {
        if (i < 0 || i >= n_) throw std::domain_error("vertex out of range");
    }

    int n_ = 0;
    std::array<std::uint32_t, 32> adj_{};
};

inline CompatGraph build_graph(const Configuration& config) {
    CompatGraph graph(kRayCount);
    for (int i = 0; i < kRayCount; ++i)
        for (int j = i + 1; j < kRayCount; ++j)
            if (inner_product(config.ray(i), config.ray(j)).is_zero()) graph.add_edge(i, j);
    return graph;
}

// Subgraph induced by the given vertices, relabeled 0..k-1 in input order.
inline CompatGraph induced_subgraph(const CompatGraph& graph, std::span<const int> vertices) {
    CompatGraph sub(static_cast<int>(vertices.size()));
    for (std::size_t a = 0; a < vertices.size(); ++a)
        for (std::size_t b = a + 1; b < vertices.size(); ++b)
            if (graph.adjacent(vertices[a], vertices[b])) sub.add_edge(static_cast<int>(a), static_cast<int>(b));
    return sub;
}

using Triple = std::array<int, 3>;

// The three SIC triples cut out by one basis: per basis vector, the set of
// SIC rays orthogonal to it. Asserts the triples partition all nine SIC ids.
inline std::array<Triple, 3> hesse_partition(const Configuration& config, const CompatGraph& graph,
                                             int basis_index) {
    const Basis& basis = config.bases.at(static_cast<std::size_t>(basis_index));
    std::array<Triple, 3> triples{};
    std::uint32_t seen = 0;
    for (int e = 0; e < 3; ++e) {
        std::uint32_t sic_neighbors = graph.row(basis.members[static_cast<std::size_t>(e)]) & 0x1ffu;
        if (std::popcount(sic_neighbors) != 3)
            throw StructuralError("basis vector " + std::to_string(basis.members[static_cast<std::size_t>(e)]) +
                                  " is not orthogonal to exactly 3 SIC rays");
        seen |= sic_neighbors;
        for (int k = 0; k < 3; ++k) {
            int id = std::countr_zero(sic_neighbors);
            sic_neighbors &= sic_neighbors - 1;
            triples[static_cast<std::size_t>(e)][static_cast<std::size_t>(k)] = id;
        }
    }
    if (seen != 0x1ffu) throw StructuralError("basis triples do not partition the SIC rays");
    return triples;
}

// All 3-cliques. In this configuration the 3-cliques are exactly the complete
// orthonormal bases hiding in the ray set.
inline std::vector<Triple> maximal_orthogonal_triples(const CompatGraph& graph) {
    std::vector<Triple> result;
    const int n = graph.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!graph.adjacent(i, j)) continue;
            std::uint32_t common = graph.row(i) & graph.row(j);
            common &= ~((1u << (j + 1)) - 1u);  // k > j keeps each clique once
            while (common != 0) {
                int k = std::countr_zero(common);
                common &= common - 1;
                result.push_back({i, j, k});
            }
        }
    return result;
}

struct IncidenceReport {
    int unordered_edge_count = 0;
    std::vector<int> degree_by_ray;
    std::array<std::array<Triple, 3>, 4> hesse_partitions{};
    std::vector<Triple> maximal_triples;
};

inline IncidenceReport incidence_report(const Configuration& config, const CompatGraph& graph) {
    IncidenceReport report;
    report.unordered_edge_count = graph.edge_count();
    report.degree_by_ray.resize(static_cast<std::size_t>(graph.size()));
    for (int i = 0; i < graph.size(); ++i) report.degree_by_ray[static_cast<std::size_t>(i)] = graph.degree(i);
    for (int b = 0; b < 4; ++b) report.hesse_partitions[static_cast<std::size_t>(b)] = hesse_partition(config, graph, b);
    report.maximal_triples = maximal_orthogonal_triples(graph);
    return report;
}

enum class GraphFormat { Dot, Json };

// DOT: one node per ray labeled "S(r,c)" / "M(b,e)", one edge per unordered
// orthogonal pair. JSON: adjacency as sorted id pairs.
inline std::string export_graph(const Configuration& config, const CompatGraph& graph, GraphFormat format) {
    std::ostringstream out;
    if (format == GraphFormat::Dot) {
        out << "graph compat {\n";
        for (int i = 0; i < graph.size(); ++i)
            out << "  r" << i << " [label=\"" << label_str(config.ray(i).label) << "\"];\n";
        for (auto [i, j] : graph.edges()) out << "  r" << i << " -- r" << j << ";\n";
        out << "}\n";
        return out.str();
    }
    out << "{\"node_count\": " << graph.size() << ", \"nodes\": [";
    for (int i = 0; i < graph.size(); ++i) {
        if (i > 0) out << ", ";
        out << "{\"id\": " << i << ", \"label\": \"" << label_str(config.ray(i).label) << "\"}";
    }
    out << "], \"edges\": [";
    bool first = true;
    for (auto [i, j] : graph.edges()) {
        if (!first) out << ", ";
        first = false;
        out << "[" << i << ", " << j << "]";
    }
    out << "]}\n";
    return out.str();
}

}  // namespace sicmub
