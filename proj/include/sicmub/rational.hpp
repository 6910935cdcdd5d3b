#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace sicmub {

// Raised when a checked 64-bit operation would wrap.
struct ArithmeticOverflow : std::overflow_error {
    ArithmeticOverflow() : std::overflow_error("exact arithmetic overflow") {}
};

// Raised on malformed external input ("p/q" strings, JSON payloads, CLI args).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow{};
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow{};
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow{};
    return r;
}

inline std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }

// |x| as uint64, defined for INT64_MIN as well.
inline std::uint64_t magnitude(std::int64_t x) {
    return x < 0 ? ~static_cast<std::uint64_t>(x) + 1u : static_cast<std::uint64_t>(x);
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

}  // namespace detail

// Exact rational p/q over checked int64. Canonical form is maintained on
// construction (q > 0, gcd(|p|, q) = 1), so equality is structural.
class Rational {
  public:
    Rational() = default;
    Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit by design
    Rational(std::int64_t numerator, std::int64_t denominator) : num_(numerator), den_(denominator) {
        normalize();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return Rational(detail::checked_neg(num_), den_); }

    friend Rational operator+(const Rational& x, const Rational& y) {
        using namespace detail;
        return Rational(checked_add(checked_mul(x.num_, y.den_), checked_mul(y.num_, x.den_)),
                        checked_mul(x.den_, y.den_));
    }
    friend Rational operator-(const Rational& x, const Rational& y) {
        using namespace detail;
        return Rational(checked_sub(checked_mul(x.num_, y.den_), checked_mul(y.num_, x.den_)),
                        checked_mul(x.den_, y.den_));
    }
    friend Rational operator*(const Rational& x, const Rational& y) {
        using namespace detail;
        return Rational(checked_mul(x.num_, y.num_), checked_mul(x.den_, y.den_));
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.is_zero()) throw std::domain_error("rational division by zero");
        using namespace detail;
        return Rational(checked_mul(x.num_, y.den_), checked_mul(x.den_, y.num_));
    }

    Rational& operator+=(const Rational& y) { return *this = *this + y; }
    Rational& operator-=(const Rational& y) { return *this = *this - y; }
    Rational& operator*=(const Rational& y) { return *this = *this * y; }
    Rational& operator/=(const Rational& y) { return *this = *this / y; }

    bool operator==(const Rational&) const = default;

    // Exact order via cross multiplication; denominators are positive.
    friend bool operator<(const Rational& x, const Rational& y) {
        return detail::checked_mul(x.num_, y.den_) < detail::checked_mul(y.num_, x.den_);
    }
    friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
    friend bool operator<=(const Rational& x, const Rational& y) { return !(y < x); }
    friend bool operator>=(const Rational& x, const Rational& y) { return !(x < y); }

    // Serialized form is always "p/q", e.g. "63/5", "-1/2", "0/1".
    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    // Accepts "p/q" or a bare integer "p".
    static Rational parse(std::string_view text) {
        auto slash = text.find('/');
        if (slash == std::string_view::npos) return Rational(parse_int(text, "numerator"), 1);
        auto den_part = text.substr(slash + 1);
        if (den_part.empty() || den_part[0] == '-' || den_part[0] == '+')
            throw ParseError("denominator must be a positive integer: '" + std::string(text) + "'");
        std::int64_t num = parse_int(text.substr(0, slash), "numerator");
        std::int64_t den = parse_int(den_part, "denominator");
        if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
        return Rational(num, den);
    }

    // For human-readable display blocks only; never used in certification.
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) {
            num_ = detail::checked_neg(num_);
            den_ = detail::checked_neg(den_);
        }
        std::uint64_t g = detail::gcd_u64(detail::magnitude(num_), detail::magnitude(den_));
        if (g > 1) {
            num_ /= static_cast<std::int64_t>(g);
            den_ /= static_cast<std::int64_t>(g);
        }
        if (num_ == 0) den_ = 1;
    }

    static std::int64_t parse_int(std::string_view text, const char* what) {
        std::int64_t value = 0;
        const char* first = text.data();
        const char* last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last || text.empty())
            throw ParseError(std::string("invalid ") + what + ": '" + std::string(text) + "'");
        return value;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace sicmub
