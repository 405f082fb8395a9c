#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace sidonkit {

/// Exact rational with a positive denominator, kept in lowest terms.
/// Exponents (gamma, epsilon, alpha, beta) are carried in this form so that
/// configurations hash reproducibly; they become floating point only at the
/// point where a power is evaluated.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    /// Accepts "p/q" or a bare integer "p".
    static Rational parse(std::string_view text);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    long double value() const noexcept { return static_cast<long double>(num_) / static_cast<long double>(den_); }
    std::string str() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace sidonkit
