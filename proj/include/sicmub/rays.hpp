#pragma once

#include <array>
#include <span>
#include <string>
#include <variant>

#include "sicmub/eisenstein.hpp"

namespace sicmub {

// Raised when a structural invariant of the configuration fails; indicates a
// construction bug or inconsistent input, never a certification outcome.
struct StructuralError : std::logic_error {
    explicit StructuralError(const std::string& msg) : std::logic_error(msg) {}
};

// The four mutually unbiased bases, in fixed order.
enum class MubBasis : int { Zero = 0, Inf = 1, One = 2, Two = 3 };

inline std::string_view basis_name(MubBasis b) {
    switch (b) {
        case MubBasis::Zero: return "0";
        case MubBasis::Inf: return "inf";
        case MubBasis::One: return "1";
        case MubBasis::Two: return "2";
    }
    throw StructuralError("bad basis tag");
}

inline MubBasis parse_basis_name(std::string_view name) {
    if (name == "0") return MubBasis::Zero;
    if (name == "inf") return MubBasis::Inf;
    if (name == "1") return MubBasis::One;
    if (name == "2") return MubBasis::Two;
    throw ParseError("unknown basis name: '" + std::string(name) + "'");
}

struct SicLabel {
    int row = 0;  // position in the 3x3 grid
    int col = 0;
    bool operator==(const SicLabel&) const = default;
};

struct MubLabel {
    MubBasis basis = MubBasis::Zero;
    int element = 0;  // column within the basis, 0..2
    bool operator==(const MubLabel&) const = default;
};

using RayLabel = std::variant<SicLabel, MubLabel>;

inline bool is_sic(const RayLabel& label) { return std::holds_alternative<SicLabel>(label); }

inline std::string label_str(const RayLabel& label) {
    if (const auto* s = std::get_if<SicLabel>(&label))
        return "S(" + std::to_string(s->row) + "," + std::to_string(s->col) + ")";
    const auto& m = std::get<MubLabel>(label);
    return "M(" + std::string(basis_name(m.basis)) + "," + std::to_string(m.element) + ")";
}

using Vec3 = std::array<EisensteinRational, 3>;

// An unnormalized ray. Norms sqrt(2), sqrt(3) are irrational, so rays are kept
// as printed and every normalized quantity divides by the rational norm_sq.
struct Ray {
    int id = 0;
    RayLabel label;
    Vec3 coords;
    Rational norm_sq;  // cached sum of |coord|^2
};

inline Rational coords_norm_sq(const Vec3& v) {
    return v[0].norm_sq() + v[1].norm_sq() + v[2].norm_sq();
}

inline Ray make_ray(int id, RayLabel label, Vec3 coords) {
    Rational n = coords_norm_sq(coords);
    if (n.is_zero()) throw std::domain_error("zero ray");
    return Ray{id, label, std::move(coords), n};
}

struct Basis {
    MubBasis name = MubBasis::Zero;
    std::array<int, 3> members{};
};

// Fixed id scheme: SIC rays 0..8 in row-major grid order, MUB rays 9..20 in
// basis order 0, inf, 1, 2 and column order within each basis.
inline constexpr int kRayCount = 21;
inline constexpr int kSicCount = 9;
inline constexpr int kMubCount = 12;

inline int sic_id(int row, int col) { return 3 * row + col; }
inline int mub_id(MubBasis b, int element) { return kSicCount + 3 * static_cast<int>(b) + element; }

inline RayLabel label_for_id(int id) {
    if (id < 0 || id >= kRayCount) throw StructuralError("ray id out of range");
    if (id < kSicCount) return SicLabel{id / 3, id % 3};
    int m = id - kSicCount;
    return MubLabel{static_cast<MubBasis>(m / 3), m % 3};
}

struct Configuration {
    std::array<Ray, kRayCount> rays;
    std::array<Basis, 4> bases;

    const Ray& ray(int id) const { return rays.at(static_cast<std::size_t>(id)); }

    static std::array<int, kSicCount> sic_ids() {
        std::array<int, kSicCount> ids{};
        for (int i = 0; i < kSicCount; ++i) ids[i] = i;
        return ids;
    }
    static std::array<int, kMubCount> mub_ids() {
        std::array<int, kMubCount> ids{};
        for (int i = 0; i < kMubCount; ++i) ids[i] = kSicCount + i;
        return ids;
    }
};

// Conjugate-linear in the first argument: sum_k conj(u_k) * v_k.
inline EisensteinRational inner_product(const Ray& u, const Ray& v) {
    EisensteinRational acc;
    for (int k = 0; k < 3; ++k) acc += u.coords[k].conj() * v.coords[k];
    return acc;
}

// |<u|v>|^2 / (<u|u><v|v>): squared overlap of the normalized rays, invariant
// under rescaling either ray.
inline Rational overlap_squared(const Ray& u, const Ray& v) {
    return inner_product(u, v).norm_sq() / (u.norm_sq * v.norm_sq);
}

// Builds a configuration from 21 coordinate vectors in id order; labels and
// basis membership follow the fixed id scheme.
inline Configuration configuration_from_coords(const std::array<Vec3, kRayCount>& coords) {
    Configuration config;
    for (int id = 0; id < kRayCount; ++id)
        config.rays[static_cast<std::size_t>(id)] = make_ray(id, label_for_id(id), coords[static_cast<std::size_t>(id)]);
    for (int b = 0; b < 4; ++b) {
        MubBasis name = static_cast<MubBasis>(b);
        config.bases[static_cast<std::size_t>(b)] =
            Basis{name, {mub_id(name, 0), mub_id(name, 1), mub_id(name, 2)}};
    }
    return config;
}

// The 21 rays: a qutrit SIC (3x3 grid) plus the four mutually unbiased bases,
// all with exact Eisenstein-rational coordinates.
inline Configuration build_configuration() {
    const EisensteinRational one = 1;
    const EisensteinRational zero = 0;
    const EisensteinRational q = EisensteinRational::omega();
    const EisensteinRational q2 = EisensteinRational::omega_sq();

    std::array<Vec3, kRayCount> coords = {{
        // SIC grid, row-major
        {zero, one, -one},
        {zero, one, -q},
        {zero, one, -q2},
        {-one, zero, one},
        {-q, zero, one},
        {-q2, zero, one},
        {one, -one, zero},
        {one, -q, zero},
        {one, -q2, zero},
        // basis 0: computational
        {one, zero, zero},
        {zero, one, zero},
        {zero, zero, one},
        // basis inf
        {one, one, one},
        {one, q, q2},
        {one, q2, q},
        // basis 1
        {one, q2, q2},
        {q2, one, q2},
        {q2, q2, one},
        // basis 2
        {one, q, q},
        {q, one, q},
        {q, q, one},
    }};
    return configuration_from_coords(coords);
}

}  // namespace sicmub
