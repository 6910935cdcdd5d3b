#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sicmub/inequality.hpp"

using namespace sicmub;

namespace {

// Naive reference maximizer: rational arithmetic throughout, double sum over
// ordered pairs taken literally. Deliberately shares nothing with the scaled
// integer search path.
struct OracleResult {
    Rational max_value;
    std::uint64_t witness_count = 0;
    std::uint32_t first_witness = 0;
};

OracleResult oracle_classical_max(const InequalitySpec& spec) {
    const int n = spec.graph.size();
    OracleResult result;
    bool have = false;
    for (std::uint32_t word = 0; word < (1u << n); ++word) {
        Rational value;
        for (int i = 0; i < n; ++i) {
            Rational ai(((word >> i) & 1u) ? 1 : -1);
            value += spec.weights[static_cast<std::size_t>(i)] * ai;
        }
        Rational quad;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j || !spec.graph.adjacent(i, j)) continue;
                Rational ai(((word >> i) & 1u) ? 1 : -1);
                Rational aj(((word >> j) & 1u) ? 1 : -1);
                quad += ai * aj;
            }
        value -= spec.k * quad;
        if (!have || value > result.max_value) {
            have = true;
            result.max_value = value;
            result.witness_count = 1;
            result.first_witness = word;
        } else if (value == result.max_value) {
            ++result.witness_count;
        }
    }
    return result;
}

Rational random_small_rational(std::mt19937& rng) {
    std::uniform_int_distribution<std::int64_t> num(-4, 4);
    std::uniform_int_distribution<std::int64_t> den(1, 5);
    return Rational(num(rng), den(rng));
}

std::vector<int> random_subset(std::mt19937& rng, int min_size, int max_size) {
    std::uniform_int_distribution<int> size_dist(min_size, max_size);
    std::vector<int> ids(kRayCount);
    for (int i = 0; i < kRayCount; ++i) ids[static_cast<std::size_t>(i)] = i;
    std::shuffle(ids.begin(), ids.end(), rng);
    ids.resize(static_cast<std::size_t>(size_dist(rng)));
    std::sort(ids.begin(), ids.end());
    return ids;
}

DensityMatrix random_density_matrix(const Configuration& config, std::mt19937& rng) {
    // Random convex mixture of ray projectors: Hermitian, trace 1, PSD.
    std::uniform_int_distribution<int> pick(0, kRayCount - 1);
    std::uniform_int_distribution<std::int64_t> coef(1, 9);
    std::array<std::int64_t, 3> c = {coef(rng), coef(rng), coef(rng)};
    std::int64_t total = c[0] + c[1] + c[2];
    OperatorM3 op;
    for (int t = 0; t < 3; ++t) {
        EisensteinRational w(Rational(c[static_cast<std::size_t>(t)], total));
        op += w * projector(config.ray(pick(rng)));
    }
    return DensityMatrix(op);
}

}  // namespace

TEST_CASE("classical value of simple assignments", "[inequality]") {
    const Configuration config = build_configuration();
    const CompatGraph graph = build_graph(config);

    const SignAssignment all_plus{(1u << 21) - 1u};
    CHECK(classical_value(all_plus, unit_spec(graph, Rational(1, 5))) == Rational(9, 5));  // 21 - (2/5)*48
    CHECK(classical_value(all_plus, unit_spec(graph, Rational(0))) == Rational(21));

    InequalitySpec zero_weights(graph, std::vector<Rational>(21, Rational(0)), Rational(0));
    std::mt19937 rng(9100);
    std::uniform_int_distribution<std::uint32_t> word(0, (1u << 21) - 1u);
    for (int trial = 0; trial < 10; ++trial)
        CHECK(classical_value(SignAssignment{word(rng)}, zero_weights) == Rational(0));
}

TEST_CASE("classical maximum at the published coefficient", "[inequality]") {
    const Configuration config = build_configuration();
    const CompatGraph graph = build_graph(config);

    InequalitySpec spec = unit_spec(graph, Rational(1, 5));
    ClassicalBound bound = classical_max(spec);
    CHECK(bound.max_value == Rational(63, 5));
    CHECK(bound.witness_count > 0);
    CHECK(classical_value(bound.first_witness, spec) == bound.max_value);

    // Nothing beats the witness among a sample of random assignments.
    std::mt19937 rng(9101);
    std::uniform_int_distribution<std::uint32_t> word(0, (1u << 21) - 1u);
    for (int trial = 0; trial < 200; ++trial)
        CHECK(classical_value(SignAssignment{word(rng)}, spec) <= bound.max_value);
}

TEST_CASE("classical maximum without the quadratic term", "[inequality]") {
    const Configuration config = build_configuration();
    const CompatGraph graph = build_graph(config);

    ClassicalBound bound = classical_max(unit_spec(graph, Rational(0)));
    CHECK(bound.max_value == Rational(21));
    CHECK(bound.witness_count == 1);
    CHECK(bound.first_witness.word == (1u << 21) - 1u);  // all +1

    CompatGraph edgeless(21);
    ClassicalBound free_bound = classical_max(unit_spec(edgeless, Rational(1, 5)));
    CHECK(free_bound.max_value == Rational(21));
}

TEST_CASE("quantum operator is scalar", "[inequality]") {
    const Configuration config = build_configuration();
    const CompatGraph graph = build_graph(config);

    QuantumAnalysis at_fifth = quantum_operator(config, unit_spec(graph, Rational(1, 5)));
    CHECK(at_fifth.op == OperatorM3::scalar(EisensteinRational(Rational(67, 5))));
    REQUIRE(at_fifth.scalar.has_value());
    CHECK(*at_fifth.scalar == EisensteinRational(Rational(67, 5)));
    CHECK(at_fifth.maximally_mixed_value == Rational(67, 5));

    QuantumAnalysis at_zero = quantum_operator(config, unit_spec(graph, Rational(0)));
    CHECK(at_zero.op == OperatorM3::scalar(7));

    // Q(k) = (7 + 32k) * 1 for randomized rational k.
    std::mt19937 rng(9102);
    for (int trial = 0; trial < 5; ++trial) {
        Rational k = random_small_rational(rng);
        QuantumAnalysis qa = quantum_operator(config, unit_spec(graph, k));
        CHECK(qa.op == OperatorM3::scalar(EisensteinRational(Rational(7) + Rational(32) * k)));
    }
}

TEST_CASE("expectation is state independent", "[inequality]") {
    const Configuration config = build_configuration();
    const CompatGraph graph = build_graph(config);
    InequalitySpec spec = unit_spec(graph, Rational(1, 5));

    CHECK(expectation(DensityMatrix::maximally_mixed(), config, spec) == Rational(67, 5));
    CHECK(expectation(DensityMatrix::pure(config.ray(0)), config, spec) == Rational(67, 5));

    std::mt19937 rng(9103);
    for (int trial = 0; trial < 5; ++trial)
        CHECK(expectation(random_density_matrix(config, rng), config, spec) == Rational(67, 5));

    CHECK(expectation(DensityMatrix::maximally_mixed(), config, unit_spec(graph, Rational(0))) == Rational(7));
}

TEST_CASE("bound certificate ties the pieces together", "[inequality]") {
    const Configuration config = build_configuration();
    const CompatGraph graph = build_graph(config);

    BoundCertificate cert = bound_certificate(config, unit_spec(graph, Rational(1, 5)));
    CHECK(cert.classical_max == Rational(63, 5));
    CHECK(cert.quantum_value == Rational(67, 5));
    CHECK(cert.quantum_is_scalar);
    CHECK(cert.violation);
    CHECK(cert.quantum_value - cert.classical_max == Rational(4, 5));

    BoundCertificate no_violation = bound_certificate(config, unit_spec(graph, Rational(1, 2)));
    CHECK_FALSE(no_violation.violation);

    BoundCertificate linear_only = bound_certificate(config, unit_spec(graph, Rational(0)));
    CHECK(linear_only.classical_max == Rational(21));
    CHECK(linear_only.quantum_value == Rational(7));
    CHECK_FALSE(linear_only.violation);
}

TEST_CASE("violation window is the open interval (1/8, 1/4)", "[inequality]") {
    const Configuration config = build_configuration();
    const CompatGraph graph = build_graph(config);
    const std::vector<Rational> unit_weights(21, Rational(1));

    WindowAnalysis window = violation_window(config, graph, unit_weights);
    CHECK_FALSE(window.empty);
    REQUIRE(window.lower.has_value());
    REQUIRE(window.upper.has_value());
    CHECK(*window.lower == Rational(1, 8));
    CHECK(*window.upper == Rational(1, 4));

    // At both endpoints the classical maximum exactly meets the quantum value.
    CHECK(window.classical_equals_quantum_at_lower);
    CHECK(window.classical_equals_quantum_at_upper);

    CHECK(window.violates(Rational(1, 5)));
    CHECK(window.violates(Rational(3, 16)));
    CHECK(window.violates(Rational(11, 50)));
    CHECK_FALSE(window.violates(Rational(0)));
    CHECK_FALSE(window.violates(Rational(1, 8)));
    CHECK_FALSE(window.violates(Rational(1, 4)));
    CHECK_FALSE(window.violates(Rational(1, 2)));

    CHECK(window.quantum_at(Rational(1, 5)) - window.classical_max_at(Rational(1, 5)) == Rational(4, 5));
}

TEST_CASE("envelope agrees with direct exhaustive search", "[inequality]") {
    const Configuration config = build_configuration();
    const CompatGraph graph = build_graph(config);
    const std::vector<Rational> unit_weights(21, Rational(1));
    WindowAnalysis window = violation_window(config, graph, unit_weights);

    // M(k) from the Pareto-reduced envelope must equal a fresh full search at
    // sample coefficients on both sides of the window.
    const std::array<Rational, 10> samples = {Rational(0),      Rational(1, 16), Rational(1, 8),  Rational(3, 16),
                                              Rational(1, 5),   Rational(11, 50), Rational(1, 4), Rational(5, 16),
                                              Rational(-1, 10), Rational(1, 2)};
    for (const Rational& k : samples) {
        ClassicalBound direct = classical_max(unit_spec(graph, k));
        CHECK(window.classical_max_at(k) == direct.max_value);
    }

    // Convexity along increasing k (max of linear functions).
    for (std::size_t i = 0; i + 2 < samples.size(); ++i) {
        Rational a(1, 3), b(2, 3);
        Rational mid = a * samples[i] + b * samples[i + 1];
        CHECK(window.classical_max_at(mid) <=
              a * window.classical_max_at(samples[i]) + b * window.classical_max_at(samples[i + 1]));
    }
}

TEST_CASE("sign flip symmetry with unit weights", "[inequality]") {
    const Configuration config = build_configuration();
    const CompatGraph graph = build_graph(config);

    // Full enumeration: per realized edge sum, the set of linear sums is
    // symmetric around zero, so every envelope line has a nonnegative linear
    // part and the maximum is attained with sum(a_i) >= 0.
    const int max_edges = graph.edge_count();
    std::vector<std::int64_t> best(static_cast<std::size_t>(2 * max_edges + 1),
                                   std::numeric_limits<std::int64_t>::min());
    std::vector<std::int64_t> worst(static_cast<std::size_t>(2 * max_edges + 1),
                                    std::numeric_limits<std::int64_t>::max());
    auto edges = graph.edges();
    for (std::uint32_t word = 0; word < (1u << 21); ++word) {
        std::int64_t linear = 0;
        for (int i = 0; i < 21; ++i) linear += ((word >> i) & 1u) ? 1 : -1;
        std::int64_t esum = 0;
        for (auto [i, j] : edges) esum += (((word >> i) ^ (word >> j)) & 1u) ? -1 : 1;
        auto bucket = static_cast<std::size_t>(esum + max_edges);
        best[bucket] = std::max(best[bucket], linear);
        worst[bucket] = std::min(worst[bucket], linear);
    }
    for (std::size_t b = 0; b < best.size(); ++b) {
        if (best[b] == std::numeric_limits<std::int64_t>::min()) continue;
        CHECK(best[b] == -worst[b]);
        CHECK(best[b] >= 0);
    }

    // The same scan independently validates the Pareto envelope.
    const std::vector<Rational> unit_weights(21, Rational(1));
    WindowAnalysis window = violation_window(config, graph, unit_weights);
    for (const EnvelopeLine& line : window.envelope) {
        auto bucket = static_cast<std::size_t>(line.edge_sum + max_edges);
        CHECK(line.linear == Rational(best[bucket]));
    }
}

TEST_CASE("engine matches the naive oracle on random sub-configurations", "[inequality]") {
    const Configuration config = build_configuration();
    const CompatGraph graph = build_graph(config);

    std::mt19937 rng(9104);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> ids = random_subset(rng, 5, 10);
        CompatGraph sub = induced_subgraph(graph, ids);

        std::vector<Rational> weights;
        for (std::size_t i = 0; i < ids.size(); ++i)
            weights.push_back(trial % 2 == 0 ? Rational(1) : random_small_rational(rng));
        Rational k = random_small_rational(rng);

        InequalitySpec spec(sub, weights, k);
        OracleResult expected = oracle_classical_max(spec);
        ClassicalBound got = classical_max(spec);

        CHECK(got.max_value == expected.max_value);
        CHECK(got.witness_count == expected.witness_count);
        CHECK(got.first_witness.word == expected.first_witness);
    }
}

TEST_CASE("partitioned search is thread-count invariant", "[inequality]") {
    const Configuration config = build_configuration();
    const CompatGraph graph = build_graph(config);

    std::mt19937 rng(9105);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<int> ids = random_subset(rng, 6, 10);
        CompatGraph sub = induced_subgraph(graph, ids);
        std::vector<Rational> weights;
        for (std::size_t i = 0; i < ids.size(); ++i) weights.push_back(random_small_rational(rng));
        InequalitySpec spec(sub, weights, random_small_rational(rng));

        ClassicalBound single = classical_max(spec, 1);
        for (unsigned threads : {2u, 3u, 5u, 8u}) {
            ClassicalBound multi = classical_max(spec, threads);
            CHECK(multi.max_value == single.max_value);
            CHECK(multi.witness_count == single.witness_count);
            CHECK(multi.first_witness.word == single.first_witness.word);
        }
    }

    InequalitySpec full = unit_spec(graph, Rational(1, 5));
    ClassicalBound one = classical_max(full, 1);
    ClassicalBound four = classical_max(full, 4);
    CHECK(one.max_value == four.max_value);
    CHECK(one.witness_count == four.witness_count);
    CHECK(one.first_witness.word == four.first_witness.word);
}

TEST_CASE("search guards", "[inequality]") {
    CompatGraph big(25);
    CHECK_THROWS_AS(classical_max(unit_spec(big, Rational(1, 5))), std::domain_error);

    CompatGraph small(4);
    small.add_edge(0, 1);
    std::vector<Rational> huge(4, Rational(std::int64_t{1} << 40));
    InequalitySpec spec(small, huge, Rational(1, std::int64_t{1} << 40));
    CHECK_THROWS_AS(classical_max(spec), ArithmeticOverflow);

    CHECK_THROWS_AS(InequalitySpec(small, std::vector<Rational>(3, Rational(1)), Rational(0)), std::domain_error);
}

TEST_CASE("window rejects weights without a scalar quantum operator", "[inequality]") {
    const Configuration config = build_configuration();
    const CompatGraph graph = build_graph(config);

    std::vector<Rational> lopsided(21, Rational(1));
    lopsided[0] = Rational(2);  // linear part no longer proportional to 1
    CHECK_THROWS_AS(violation_window(config, graph, lopsided), std::domain_error);
}
