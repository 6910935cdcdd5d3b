#pragma once

#include <map>
#include <optional>

#include "sicmub/incidence.hpp"
#include "sicmub/operators.hpp"

namespace sicmub {

// Kochen-Specker truth assignments: one ray of each complete orthonormal
// basis is true, no two orthogonal rays are both true.

// Per basis (order 0, inf, 1, 2): the element index assigned truth value 1.
struct BasisChoice {
    std::array<int, 4> element{};
    bool operator==(const BasisChoice&) const = default;
};

enum class Truth : unsigned char { False = 0, True = 1, Undetermined = 2 };

inline char truth_char(Truth t) {
    switch (t) {
        case Truth::False: return '0';
        case Truth::True: return '1';
        case Truth::Undetermined: return 'u';
    }
    throw StructuralError("bad truth tag");
}

struct TriStateAssignment {
    std::array<Truth, kRayCount> value{};

    std::vector<int> sic_ids_with(Truth t) const {
        std::vector<int> ids;
        for (int i = 0; i < kSicCount; ++i)
            if (value[static_cast<std::size_t>(i)] == t) ids.push_back(i);
        return ids;
    }
};

// A complete 0/1 coloring, bit i = truth value of ray id i.
struct FullColoring {
    std::uint32_t mask = 0;
    bool is_true(int id) const { return (mask >> id) & 1u; }
};

// No edge with both endpoints true, and exactly one true ray per triple.
inline bool is_valid_coloring(const CompatGraph& graph, std::span<const Triple> triples, FullColoring coloring) {
    for (int i = 0; i < graph.size(); ++i)
        if (coloring.is_true(i) && (graph.row(i) & coloring.mask) != 0) return false;
    for (const Triple& t : triples) {
        int trues = 0;
        for (int id : t) trues += coloring.is_true(id) ? 1 : 0;
        if (trues != 1) return false;
    }
    return true;
}

// Assigns the chosen MUB ray of each basis true and the rest false, then
// forces every SIC ray orthogonal to a true MUB ray to false. SIC rays left
// untouched stay undetermined.
inline TriStateAssignment propagate(const Configuration& config, const CompatGraph& graph,
                                    const BasisChoice& choice) {
    TriStateAssignment out;
    out.value.fill(Truth::Undetermined);
    std::uint32_t true_mask = 0;
    for (int b = 0; b < 4; ++b) {
        int chosen = choice.element[static_cast<std::size_t>(b)];
        if (chosen < 0 || chosen > 2) throw std::domain_error("basis choice element out of range");
        for (int e = 0; e < 3; ++e) {
            int id = config.bases[static_cast<std::size_t>(b)].members[static_cast<std::size_t>(e)];
            out.value[static_cast<std::size_t>(id)] = (e == chosen) ? Truth::True : Truth::False;
            if (e == chosen) true_mask |= 1u << id;
        }
    }
    for (int s = 0; s < kSicCount; ++s)
        if ((graph.row(s) & true_mask) != 0) out.value[static_cast<std::size_t>(s)] = Truth::False;
    return out;
}

struct ChoiceOutcome {
    BasisChoice choice;
    std::array<int, 4> true_rays{};
    std::vector<int> undetermined_sic;
};

struct ChoiceStats {
    std::map<int, int> histogram;  // undetermined-SIC count -> number of choices
    std::vector<ChoiceOutcome> outcomes;
};

// All 3^4 = 81 basis choices, in lexicographic order of the element indices.
inline ChoiceStats enumerate_choices(const Configuration& config, const CompatGraph& graph) {
    ChoiceStats stats;
    for (int e0 = 0; e0 < 3; ++e0)
        for (int e1 = 0; e1 < 3; ++e1)
            for (int e2 = 0; e2 < 3; ++e2)
                for (int e3 = 0; e3 < 3; ++e3) {
                    BasisChoice choice{{e0, e1, e2, e3}};
                    TriStateAssignment assignment = propagate(config, graph, choice);
                    ChoiceOutcome outcome;
                    outcome.choice = choice;
                    for (int b = 0; b < 4; ++b)
                        outcome.true_rays[static_cast<std::size_t>(b)] =
                            config.bases[static_cast<std::size_t>(b)]
                                .members[static_cast<std::size_t>(choice.element[static_cast<std::size_t>(b)])];
                    outcome.undetermined_sic = assignment.sic_ids_with(Truth::Undetermined);
                    stats.histogram[static_cast<int>(outcome.undetermined_sic.size())] += 1;
                    stats.outcomes.push_back(std::move(outcome));
                }
    return stats;
}

// First choice in enumeration order whose propagation leaves two SIC rays
// undetermined; the canonical sample for figure output.
inline BasisChoice canonical_sample_choice(const Configuration& config, const CompatGraph& graph) {
    ChoiceStats stats = enumerate_choices(config, graph);
    for (const ChoiceOutcome& outcome : stats.outcomes)
        if (outcome.undetermined_sic.size() == 2) return outcome.choice;
    throw StructuralError("no basis choice leaves two SIC rays undetermined");
}

struct MaxSicTrueResult {
    int max_true = 0;
    FullColoring witness;
};

// Maximum number of SIC rays assigned 1 over all valid full colorings.
// Every valid coloring picks one true ray per basis (the bases are the only
// complete orthogonal triples), so the search runs over the 81 choices times
// all completions of the undetermined SIC rays; completions are checked
// against the orthogonality rule rather than assumed compatible.
inline MaxSicTrueResult max_sic_true(const Configuration& config, const CompatGraph& graph) {
    std::vector<Triple> triples;
    for (const Basis& basis : config.bases) triples.push_back({basis.members[0], basis.members[1], basis.members[2]});

    MaxSicTrueResult best;
    best.max_true = -1;
    for (int e0 = 0; e0 < 3; ++e0)
        for (int e1 = 0; e1 < 3; ++e1)
            for (int e2 = 0; e2 < 3; ++e2)
                for (int e3 = 0; e3 < 3; ++e3) {
                    BasisChoice choice{{e0, e1, e2, e3}};
                    TriStateAssignment assignment = propagate(config, graph, choice);
                    std::uint32_t mub_mask = 0;
                    for (int b = 0; b < 4; ++b)
                        mub_mask |= 1u << config.bases[static_cast<std::size_t>(b)]
                                              .members[static_cast<std::size_t>(choice.element[static_cast<std::size_t>(b)])];
                    std::vector<int> undetermined = assignment.sic_ids_with(Truth::Undetermined);
                    const std::uint32_t subsets = 1u << undetermined.size();
                    for (std::uint32_t s = 0; s < subsets; ++s) {
                        std::uint32_t sic_mask = 0;
                        for (std::size_t t = 0; t < undetermined.size(); ++t)
                            if ((s >> t) & 1u) sic_mask |= 1u << undetermined[t];
                        FullColoring coloring{mub_mask | sic_mask};
                        if (!is_valid_coloring(graph, triples, coloring)) continue;
                        int count = std::popcount(sic_mask);
                        if (count > best.max_true) {
                            best.max_true = count;
                            best.witness = coloring;
                        }
                    }
                }
    if (best.max_true < 0) throw StructuralError("no valid coloring found");
    return best;
}

// Sum over the SIC rays of tr(rho * P_i), evaluated exactly.
inline Rational quantum_ks_value(const Configuration& config, const DensityMatrix& rho) {
    Rational acc;
    for (int id : Configuration::sic_ids()) acc += real_expectation(rho, projector(config.ray(id)));
    return acc;
}

// Grid description sufficient to replot the truth-assignment diagrams: the
// 3x3 SIC grid with per-cell state after propagation, and one line per MUB
// ray covering the cells of the SIC rays orthogonal to it.
struct FigureLine {
    MubBasis basis = MubBasis::Zero;
    int element = 0;
    std::array<std::pair<int, int>, 3> cells{};  // (row, col), sorted
    bool solid = false;                          // true iff this MUB ray is assigned 1
};

struct FigureData {
    BasisChoice choice;
    std::array<std::array<Truth, 3>, 3> cell_state{};
    std::vector<FigureLine> lines;
};

inline FigureData figure_data(const Configuration& config, const CompatGraph& graph, const BasisChoice& choice) {
    FigureData fig;
    fig.choice = choice;
    TriStateAssignment assignment = propagate(config, graph, choice);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            fig.cell_state[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                assignment.value[static_cast<std::size_t>(sic_id(r, c))];
    for (int b = 0; b < 4; ++b) {
        auto triples = hesse_partition(config, graph, b);
        for (int e = 0; e < 3; ++e) {
            FigureLine line;
            line.basis = static_cast<MubBasis>(b);
            line.element = e;
            for (int k = 0; k < 3; ++k) {
                int id = triples[static_cast<std::size_t>(e)][static_cast<std::size_t>(k)];
                line.cells[static_cast<std::size_t>(k)] = {id / 3, id % 3};
            }
            line.solid = choice.element[static_cast<std::size_t>(b)] == e;
            fig.lines.push_back(line);
        }
    }
    return fig;
}

}  // namespace sicmub
