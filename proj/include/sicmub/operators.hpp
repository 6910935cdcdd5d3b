#pragma once

#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "sicmub/rays.hpp"

namespace sicmub {

// 3x3 matrix over Q(w).
class OperatorM3 {
  public:
    OperatorM3() = default;  // zero matrix

    static OperatorM3 identity() { return scalar(1); }

    static OperatorM3 scalar(const EisensteinRational& lambda) {
        OperatorM3 m;
        for (int i = 0; i < 3; ++i) m.at(i, i) = lambda;
        return m;
    }

    EisensteinRational& at(int r, int c) { return e_[static_cast<std::size_t>(3 * r + c)]; }
    const EisensteinRational& at(int r, int c) const { return e_[static_cast<std::size_t>(3 * r + c)]; }

    friend OperatorM3 operator+(const OperatorM3& x, const OperatorM3& y) {
        OperatorM3 m;
        for (std::size_t i = 0; i < 9; ++i) m.e_[i] = x.e_[i] + y.e_[i];
        return m;
    }
    friend OperatorM3 operator-(const OperatorM3& x, const OperatorM3& y) {
        OperatorM3 m;
        for (std::size_t i = 0; i < 9; ++i) m.e_[i] = x.e_[i] - y.e_[i];
        return m;
    }
    friend OperatorM3 operator*(const OperatorM3& x, const OperatorM3& y) {
        OperatorM3 m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                EisensteinRational acc;
                for (int k = 0; k < 3; ++k) acc += x.at(r, k) * y.at(k, c);
                m.at(r, c) = acc;
            }
        return m;
    }
    friend OperatorM3 operator*(const EisensteinRational& s, const OperatorM3& y) {
        OperatorM3 m;
        for (std::size_t i = 0; i < 9; ++i) m.e_[i] = s * y.e_[i];
        return m;
    }

    OperatorM3& operator+=(const OperatorM3& y) { return *this = *this + y; }
    OperatorM3& operator-=(const OperatorM3& y) { return *this = *this - y; }

    bool operator==(const OperatorM3&) const = default;

    EisensteinRational trace() const { return at(0, 0) + at(1, 1) + at(2, 2); }

    OperatorM3 adjoint() const {
        OperatorM3 m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m.at(r, c) = at(c, r).conj();
        return m;
    }

    bool is_hermitian() const { return *this == adjoint(); }

    // The exact lambda with *this == lambda * 1, if one exists.
    std::optional<EisensteinRational> scalar_of_identity() const {
        const EisensteinRational& lambda = at(0, 0);
        if (*this == scalar(lambda)) return lambda;
        return std::nullopt;
    }

  private:
    std::array<EisensteinRational, 9> e_{};
};

inline EisensteinRational det(const OperatorM3& m) {
    EisensteinRational acc;
    acc += m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1));
    acc -= m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0));
    acc += m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
    return acc;
}

// Normalized rank-1 projector v v^dagger / <v|v>. Idempotent, Hermitian,
// trace 1, all exact.
inline OperatorM3 projector(const Ray& v) {
    if (coords_norm_sq(v.coords).is_zero()) throw std::domain_error("projector of zero ray");
    OperatorM3 m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            EisensteinRational outer = v.coords[static_cast<std::size_t>(r)] * v.coords[static_cast<std::size_t>(c)].conj();
            m.at(r, c) = EisensteinRational(outer.a() / v.norm_sq, outer.b() / v.norm_sq);
        }
    return m;
}

inline OperatorM3 sum_projectors(const Configuration& config, std::span<const int> ids) {
    if (ids.empty()) throw std::domain_error("sum_projectors over empty id set");
    OperatorM3 acc;
    for (int id : ids) acc += projector(config.ray(id));
    return acc;
}

// Exact density matrix: Hermitian, unit trace, and positive semidefinite,
// certified by nonnegativity of all seven principal minors.
class DensityMatrix {
  public:
    explicit DensityMatrix(OperatorM3 op) : op_(std::move(op)) { validate(); }

    static DensityMatrix maximally_mixed() {
        return DensityMatrix(OperatorM3::scalar(Rational(1, 3)));
    }

    static DensityMatrix pure(const Ray& v) { return DensityMatrix(projector(v)); }

    const OperatorM3& op() const { return op_; }

  private:
    void validate() const {
        if (!op_.is_hermitian()) throw std::domain_error("density matrix not Hermitian");
        if (op_.trace() != EisensteinRational(1)) throw std::domain_error("density matrix trace != 1");
        auto check_minor = [](const EisensteinRational& d) {
            if (!d.is_real() || d.a().is_negative())
                throw std::domain_error("density matrix has a negative principal minor");
        };
        for (int i = 0; i < 3; ++i) check_minor(op_.at(i, i));
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                check_minor(op_.at(i, i) * op_.at(j, j) - op_.at(i, j) * op_.at(j, i));
        check_minor(det(op_));
    }

    OperatorM3 op_;
};

// tr(rho * M) for Hermitian M; the trace of a product of Hermitian matrices
// is real, and this checks it.
inline Rational real_expectation(const DensityMatrix& rho, const OperatorM3& m) {
    EisensteinRational t = (rho.op() * m).trace();
    if (!t.is_real()) throw StructuralError("expectation of Hermitian operator came out complex");
    return t.a();
}

}  // namespace sicmub
