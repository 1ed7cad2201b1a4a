#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace fqm {

using i64 = std::int64_t;
using i128 = __int128;

// Narrow a 128-bit intermediate back to 64 bits, throwing OverflowError
// when it does not fit. `context` names the operation for the message.
i64 narrow(i128 v, const char* context);

i128 gcd128(i128 a, i128 b);

// Floor division and non-negative remainder for a positive modulus.
i128 floor_div(i128 a, i128 b);
i128 mod_floor(i128 a, i128 b);

// Exact rational over 64-bit integers. Always reduced, denominator > 0.
// Every operation is overflow-checked.
class Rational {
public:
    constexpr Rational() = default;
    Rational(i64 n) : num_(n), den_(1) {}  // NOLINT: implicit from integers is intended
    Rational(i64 n, i64 d);

    i64 num() const { return num_; }
    i64 den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    bool is_positive() const { return num_ > 0; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    i64 floor() const;

    Rational operator-() const;
    friend Rational operator+(const Rational& x, const Rational& y);
    friend Rational operator-(const Rational& x, const Rational& y);
    friend Rational operator*(const Rational& x, const Rational& y);
    friend Rational operator/(const Rational& x, const Rational& y);

    friend bool operator==(const Rational& x, const Rational& y) = default;
    friend std::strong_ordering operator<=>(const Rational& x, const Rational& y);

    // Parses "3", "-7/4", "0.125", "1e-3", "2.5e1". Decimal input is
    // converted exactly (0.1 -> 1/10), never through a double.
    static Rational parse(std::string_view text);

    std::string str() const;

private:
    static Rational from_wide(i128 n, i128 d, const char* context);

    i64 num_ = 0;
    i64 den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace fqm
