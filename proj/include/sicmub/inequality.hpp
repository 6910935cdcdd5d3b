#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <thread>

#include "sicmub/coloring.hpp"
#include "sicmub/incidence.hpp"
#include "sicmub/operators.hpp"

namespace sicmub {

// Noncontextual inequality engine: exhaustive classical bound over all +-1
// assignments, exact quantum operator, and the k-window analysis.
//
// Convention: the double sum runs over ordered pairs with Gamma_ii = 0, so
// each unordered edge contributes twice:
//   C(a) = sum_i w_i a_i - 2k * sum_{edges (i,j)} a_i a_j.
inline constexpr std::string_view kSumConvention = "ordered-pairs";

// One +-1 assignment per vertex, packed as bits: bit i set means a_i = +1.
// Assignments are ordered by this word, which fixes witness tie-breaking.
struct SignAssignment {
    std::uint32_t word = 0;

    int sign(int i) const { return ((word >> i) & 1u) ? +1 : -1; }

    std::string pm_string(int n) const {
        std::string s(static_cast<std::size_t>(n), '?');
        for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = sign(i) > 0 ? '+' : '-';
        return s;
    }

    bool operator==(const SignAssignment&) const = default;
};

struct InequalitySpec {
    CompatGraph graph;
    std::vector<Rational> weights;  // linear term, one per vertex
    Rational k;                     // quadratic coefficient

    InequalitySpec(CompatGraph g, std::vector<Rational> w, Rational coeff)
        : graph(std::move(g)), weights(std::move(w)), k(std::move(coeff)) {
        if (weights.size() != static_cast<std::size_t>(graph.size()))
            throw std::domain_error("one weight per vertex required");
    }
};

inline InequalitySpec unit_spec(const CompatGraph& graph, const Rational& k) {
    return InequalitySpec(graph, std::vector<Rational>(static_cast<std::size_t>(graph.size()), Rational(1)), k);
}

inline Rational classical_value(const SignAssignment& a, const InequalitySpec& spec) {
    Rational linear;
    for (int i = 0; i < spec.graph.size(); ++i)
        linear += spec.weights[static_cast<std::size_t>(i)] * Rational(a.sign(i));
    std::int64_t edge_sum = 0;
    for (auto [i, j] : spec.graph.edges()) edge_sum += a.sign(i) * a.sign(j);
    return linear - spec.k * Rational(2 * edge_sum);
}

namespace detail {

inline std::int64_t magnitude_i64(std::int64_t x) {
    if (x == std::numeric_limits<std::int64_t>::min()) throw ArithmeticOverflow{};
    return x < 0 ? -x : x;
}

// Common-denominator form of the inequality for the integer hot loop:
//   C(a) * (D * kq) = kq * sum_i W_i a_i - 2 * kp * D * E(a)
// with w_i = W_i / D and k = kp / kq. Bounds are verified with checked
// arithmetic up front so the per-assignment loop can use plain int64.
struct ScaledSpec {
    int n = 0;
    std::array<std::int64_t, 32> weight_int{};  // W_i
    std::array<std::uint32_t, 32> hi_mask{};    // neighbors j > i
    std::array<std::int64_t, 32> hi_degree{};
    std::int64_t denom = 1;      // D
    std::int64_t kq = 1;         // k = kp / kq, kq > 0
    std::int64_t two_kp_d = 0;   // 2 * kp * D
    std::int64_t scale = 1;      // D * kq, the divisor restoring the rational value

    std::int64_t value(std::uint32_t word) const {
        std::int64_t linear = 0;
        std::int64_t edge_sum = 0;
        for (int i = 0; i < n; ++i) {
            const std::int64_t two_hits = 2 * std::popcount(hi_mask[static_cast<std::size_t>(i)] & word);
            if ((word >> i) & 1u) {
                linear += weight_int[static_cast<std::size_t>(i)];
                edge_sum += two_hits - hi_degree[static_cast<std::size_t>(i)];
            } else {
                linear -= weight_int[static_cast<std::size_t>(i)];
                edge_sum -= two_hits - hi_degree[static_cast<std::size_t>(i)];
            }
        }
        return kq * linear - two_kp_d * edge_sum;
    }
};

inline ScaledSpec scale_spec(const InequalitySpec& spec) {
    const int n = spec.graph.size();
    if (n > 24) throw std::domain_error("exhaustive search limited to 24 vertices");

    ScaledSpec s;
    s.n = n;
    s.denom = 1;
    for (const Rational& w : spec.weights) s.denom = checked_mul(s.denom / std::gcd(s.denom, w.den()), w.den());
    for (int i = 0; i < n; ++i) {
        const Rational& w = spec.weights[static_cast<std::size_t>(i)];
        s.weight_int[static_cast<std::size_t>(i)] = checked_mul(w.num(), s.denom / w.den());
        std::uint32_t hi = spec.graph.row(i);
        hi &= ~((1u << (i + 1)) - 1u);  // neighbors j > i only; i < 24 here
        s.hi_mask[static_cast<std::size_t>(i)] = hi;
        s.hi_degree[static_cast<std::size_t>(i)] = std::popcount(hi);
    }
    s.kq = spec.k.den();
    s.two_kp_d = checked_mul(checked_mul(2, spec.k.num()), s.denom);
    s.scale = checked_mul(s.denom, s.kq);

    // Worst-case |value| must stay clear of wrap-around.
    std::int64_t abs_linear = 0;
    for (int i = 0; i < n; ++i) abs_linear = checked_add(abs_linear, magnitude_i64(s.weight_int[static_cast<std::size_t>(i)]));
    std::int64_t bound = checked_add(checked_mul(s.kq, abs_linear),
                                     checked_mul(magnitude_i64(s.two_kp_d), 2 * spec.graph.edge_count()));
    if (bound > (std::int64_t{1} << 62)) throw ArithmeticOverflow{};
    return s;
}

struct ChunkResult {
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    std::uint64_t count = 0;
    std::uint32_t first = 0;
};

inline ChunkResult scan_range(const ScaledSpec& s, std::uint32_t begin, std::uint32_t end) {
    ChunkResult r;
    for (std::uint32_t w = begin; w < end; ++w) {
        std::int64_t v = s.value(w);
        if (v > r.best) {
            r.best = v;
            r.count = 1;
            r.first = w;
        } else if (v == r.best) {
            ++r.count;
        }
    }
    return r;
}

}  // namespace detail

struct ClassicalBound {
    Rational max_value;
    std::uint64_t witness_count = 0;
    SignAssignment first_witness;  // smallest packed word among maximizers
};

// Exact maximum of the classical value over all 2^n sign assignments.
// The assignment space is split into contiguous chunks; merging chunk
// results in ascending order keeps the outcome independent of the thread
// count, including the witness.
inline ClassicalBound classical_max(const InequalitySpec& spec, unsigned num_threads = 0) {
    const detail::ScaledSpec scaled = detail::scale_spec(spec);
    const std::uint64_t total = std::uint64_t{1} << scaled.n;

    unsigned workers = num_threads != 0 ? num_threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total));

    std::vector<detail::ChunkResult> results(workers);
    if (workers == 1) {
        results[0] = detail::scan_range(scaled, 0, static_cast<std::uint32_t>(total));
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (total + workers - 1) / workers;
        for (unsigned t = 0; t < workers; ++t) {
            const std::uint32_t begin = static_cast<std::uint32_t>(std::min<std::uint64_t>(t * chunk, total));
            const std::uint32_t end = static_cast<std::uint32_t>(std::min<std::uint64_t>((t + 1) * chunk, total));
            pool.emplace_back([&scaled, &results, t, begin, end] { results[t] = detail::scan_range(scaled, begin, end); });
        }
        for (auto& th : pool) th.join();
    }

    detail::ChunkResult merged;  // chunks are in ascending word order
    for (const auto& r : results) {
        if (r.best > merged.best) {
            merged = r;
        } else if (r.best == merged.best) {
            merged.count += r.count;
        }
    }

    ClassicalBound bound{Rational(merged.best, scaled.scale), merged.count, SignAssignment{merged.first}};
    return bound;
}

struct QuantumAnalysis {
    OperatorM3 op;                            // Q = sum_i w_i A_i - k * sum_ordered Gamma_ij A_i A_j
    std::optional<EisensteinRational> scalar; // lambda when Q = lambda * 1
    Rational maximally_mixed_value;           // tr(Q) / 3
};

namespace detail {

inline std::vector<OperatorM3> dichotomic_observables(const Configuration& config) {
    std::vector<OperatorM3> obs;
    obs.reserve(kRayCount);
    for (int id = 0; id < kRayCount; ++id) {
        // A_i = 1 - 2|psi_i><psi_i|, spectrum (1, 1, -1)
        obs.push_back(OperatorM3::identity() - (EisensteinRational(2) * projector(config.ray(id))));
    }
    return obs;
}

inline Rational real_scalar(const EisensteinRational& x, const char* what) {
    if (!x.is_real()) throw StructuralError(std::string(what) + " is not real");
    return x.a();
}

}  // namespace detail

inline QuantumAnalysis quantum_operator(const Configuration& config, const InequalitySpec& spec) {
    if (spec.graph.size() != kRayCount)
        throw std::domain_error("quantum operator needs the full 21-ray spec");
    const std::vector<OperatorM3> obs = detail::dichotomic_observables(config);

    OperatorM3 q;
    for (int i = 0; i < kRayCount; ++i) {
        const Rational& w = spec.weights[static_cast<std::size_t>(i)];
        q += EisensteinRational(w) * obs[static_cast<std::size_t>(i)];
    }
    OperatorM3 quad;
    for (auto [i, j] : spec.graph.edges()) {
        quad += obs[static_cast<std::size_t>(i)] * obs[static_cast<std::size_t>(j)];
        quad += obs[static_cast<std::size_t>(j)] * obs[static_cast<std::size_t>(i)];
    }
    q -= EisensteinRational(spec.k) * quad;

    QuantumAnalysis analysis;
    analysis.op = q;
    analysis.scalar = q.scalar_of_identity();
    analysis.maximally_mixed_value = detail::real_scalar(q.trace(), "tr(Q)") / Rational(3);
    return analysis;
}

// tr(rho * Q), exact; independent of rho whenever Q is scalar.
inline Rational expectation(const DensityMatrix& rho, const Configuration& config, const InequalitySpec& spec) {
    return real_expectation(rho, quantum_operator(config, spec).op);
}

struct BoundCertificate {
    Rational classical_max;
    std::uint64_t witness_count = 0;
    SignAssignment first_witness;
    Rational quantum_value;  // scalar value when Q is scalar, else tr(Q)/3
    bool quantum_is_scalar = false;
    bool violation = false;  // quantum_value > classical_max
};

inline BoundCertificate bound_certificate(const Configuration& config, const InequalitySpec& spec,
                                          unsigned num_threads = 0) {
    ClassicalBound classical = classical_max(spec, num_threads);
    QuantumAnalysis quantum = quantum_operator(config, spec);
    BoundCertificate cert;
    cert.classical_max = classical.max_value;
    cert.witness_count = classical.witness_count;
    cert.first_witness = classical.first_witness;
    cert.quantum_is_scalar = quantum.scalar.has_value();
    cert.quantum_value = cert.quantum_is_scalar ? detail::real_scalar(*quantum.scalar, "Q scalar")
                                                : quantum.maximally_mixed_value;
    cert.violation = cert.quantum_value > cert.classical_max;
    return cert;
}

// One line of the classical upper envelope: value(k) = linear - 2k*edge_sum.
struct EnvelopeLine {
    Rational linear;
    std::int64_t edge_sum = 0;
};

// Classical maximum as a function of k. The classical value is linear in k
// for a fixed assignment, so the finitely many realized (linear, edge-sum)
// pairs determine a convex piecewise-linear maximum M(k); keeping only the
// largest linear part per edge sum is the Pareto reduction.
struct WindowAnalysis {
    std::vector<EnvelopeLine> envelope;  // sorted by edge_sum
    Rational quantum_const;              // q(k) = quantum_const + quantum_slope * k
    Rational quantum_slope;

    bool empty = true;  // no k with a violation
    std::optional<Rational> lower, upper;  // open interval bounds, when finite
    bool classical_equals_quantum_at_lower = false;
    bool classical_equals_quantum_at_upper = false;

    Rational classical_max_at(const Rational& k) const {
        if (envelope.empty()) throw std::domain_error("empty envelope");
        std::optional<Rational> best;
        for (const EnvelopeLine& line : envelope) {
            Rational v = line.linear - Rational(2) * k * Rational(line.edge_sum);
            if (!best || v > *best) best = v;
        }
        return *best;
    }

    Rational quantum_at(const Rational& k) const { return quantum_const + quantum_slope * k; }

    bool violates(const Rational& k) const { return quantum_at(k) > classical_max_at(k); }
};

namespace detail {

// Single pass over the assignment cube collecting, per realized edge sum,
// the maximal scaled linear part.
inline std::vector<EnvelopeLine> collect_envelope(const CompatGraph& graph, std::span<const Rational> weights) {
    InequalitySpec probe(graph, std::vector<Rational>(weights.begin(), weights.end()), Rational(0));
    const ScaledSpec scaled = scale_spec(probe);

    const int max_edges = graph.edge_count();
    const std::size_t buckets = static_cast<std::size_t>(2 * max_edges + 1);
    std::vector<std::int64_t> best_linear(buckets, 0);
    std::vector<bool> realized(buckets, false);

    const std::uint64_t total = std::uint64_t{1} << graph.size();
    for (std::uint64_t w = 0; w < total; ++w) {
        const std::uint32_t word = static_cast<std::uint32_t>(w);
        std::int64_t linear = 0;
        std::int64_t edge_sum = 0;
        for (int i = 0; i < scaled.n; ++i) {
            const std::int64_t two_hits = 2 * std::popcount(scaled.hi_mask[static_cast<std::size_t>(i)] & word);
            if ((word >> i) & 1u) {
                linear += scaled.weight_int[static_cast<std::size_t>(i)];
                edge_sum += two_hits - scaled.hi_degree[static_cast<std::size_t>(i)];
            } else {
                linear -= scaled.weight_int[static_cast<std::size_t>(i)];
                edge_sum -= two_hits - scaled.hi_degree[static_cast<std::size_t>(i)];
            }
        }
        const std::size_t bucket = static_cast<std::size_t>(edge_sum + max_edges);
        if (!realized[bucket] || linear > best_linear[bucket]) {
            realized[bucket] = true;
            best_linear[bucket] = linear;
        }
    }

    std::vector<EnvelopeLine> envelope;
    for (std::size_t b = 0; b < buckets; ++b)
        if (realized[b])
            envelope.push_back({Rational(best_linear[b], scaled.denom), static_cast<std::int64_t>(b) - max_edges});
    return envelope;
}

}  // namespace detail

// Exact interval of k where the quantum value exceeds the classical maximum.
// Requires both the linear and quadratic parts of Q to be scalar multiples of
// the identity; otherwise no state-independent quantum value exists.
inline WindowAnalysis violation_window(const Configuration& config, const CompatGraph& graph,
                                       std::span<const Rational> weights) {
    if (graph.size() != kRayCount || weights.size() != kRayCount)
        throw std::domain_error("violation window needs the full 21-ray spec");

    const std::vector<OperatorM3> obs = detail::dichotomic_observables(config);
    OperatorM3 linear_op;
    for (int i = 0; i < kRayCount; ++i)
        linear_op += EisensteinRational(weights[static_cast<std::size_t>(i)]) * obs[static_cast<std::size_t>(i)];
    OperatorM3 quad_op;
    for (auto [i, j] : graph.edges()) {
        quad_op += obs[static_cast<std::size_t>(i)] * obs[static_cast<std::size_t>(j)];
        quad_op += obs[static_cast<std::size_t>(j)] * obs[static_cast<std::size_t>(i)];
    }

    auto linear_scalar = linear_op.scalar_of_identity();
    auto quad_scalar = quad_op.scalar_of_identity();
    if (!linear_scalar || !quad_scalar)
        throw std::domain_error("quantum operator is not a scalar multiple of the identity for these weights");

    WindowAnalysis window;
    window.quantum_const = detail::real_scalar(*linear_scalar, "linear part of Q");
    window.quantum_slope = -detail::real_scalar(*quad_scalar, "quadratic part of Q");
    window.envelope = detail::collect_envelope(graph, weights);

    // q(k) > linear - 2k*E for every envelope line: intersect open half-lines.
    std::optional<Rational> lower, upper;
    bool feasible = true;
    for (const EnvelopeLine& line : window.envelope) {
        Rational slope = window.quantum_slope + Rational(2 * line.edge_sum);
        Rational intercept = window.quantum_const - line.linear;
        if (slope.is_zero()) {
            if (intercept <= Rational(0)) feasible = false;
            continue;
        }
        Rational root = -intercept / slope;
        if (slope > Rational(0)) {
            if (!lower || root > *lower) lower = root;
        } else {
            if (!upper || root < *upper) upper = root;
        }
    }
    if (feasible && lower && upper && *lower >= *upper) feasible = false;

    window.empty = !feasible;
    if (feasible) {
        window.lower = lower;
        window.upper = upper;
        if (lower)
            window.classical_equals_quantum_at_lower = window.classical_max_at(*lower) == window.quantum_at(*lower);
        if (upper)
            window.classical_equals_quantum_at_upper = window.classical_max_at(*upper) == window.quantum_at(*upper);
    }
    return window;
}

}  // namespace sicmub
