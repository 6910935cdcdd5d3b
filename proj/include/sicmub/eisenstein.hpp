#pragma once

#include <complex>

#include "sicmub/rational.hpp"

namespace sicmub {

// Element a + b·w of Q(w), w = exp(2*pi*i/3). Multiplication reduces by the
// minimal polynomial w^2 = -1 - w; conjugation uses conj(w) = w^2.
class EisensteinRational {
  public:
    EisensteinRational() = default;
    EisensteinRational(Rational a) : a_(std::move(a)) {}  // NOLINT: implicit by design
    EisensteinRational(std::int64_t a) : a_(a) {}         // NOLINT
    EisensteinRational(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

    static EisensteinRational omega() { return {0, 1}; }
    static EisensteinRational omega_sq() { return {-1, -1}; }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_real() const { return b_.is_zero(); }

    EisensteinRational conj() const { return {a_ - b_, -b_}; }

    // a^2 - a*b + b^2 = x * conj(x); nonnegative, zero iff x = 0.
    Rational norm_sq() const { return a_ * a_ - a_ * b_ + b_ * b_; }

    EisensteinRational inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        Rational n = norm_sq();
        EisensteinRational c = conj();
        return {c.a_ / n, c.b_ / n};
    }

    EisensteinRational operator-() const { return {-a_, -b_}; }

    friend EisensteinRational operator+(const EisensteinRational& x, const EisensteinRational& y) {
        return {x.a_ + y.a_, x.b_ + y.b_};
    }
    friend EisensteinRational operator-(const EisensteinRational& x, const EisensteinRational& y) {
        return {x.a_ - y.a_, x.b_ - y.b_};
    }
    friend EisensteinRational operator*(const EisensteinRational& x, const EisensteinRational& y) {
        return {x.a_ * y.a_ - x.b_ * y.b_, x.a_ * y.b_ + y.a_ * x.b_ - x.b_ * y.b_};
    }
    friend EisensteinRational operator/(const EisensteinRational& x, const EisensteinRational& y) {
        return x * y.inverse();
    }

    EisensteinRational& operator+=(const EisensteinRational& y) { return *this = *this + y; }
    EisensteinRational& operator-=(const EisensteinRational& y) { return *this = *this - y; }
    EisensteinRational& operator*=(const EisensteinRational& y) { return *this = *this * y; }

    bool operator==(const EisensteinRational&) const = default;

    std::string str() const { return "(" + a_.str() + ", " + b_.str() + "w)"; }

    // Display only. w = -1/2 + i*sqrt(3)/2.
    std::complex<double> to_complex() const {
        static const std::complex<double> w(-0.5, std::sqrt(3.0) / 2.0);
        return a_.to_double() + b_.to_double() * w;
    }

  private:
    Rational a_;
    Rational b_;
};

}  // namespace sicmub
