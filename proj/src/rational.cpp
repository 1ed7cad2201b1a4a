#include "fqm/rational.hpp"

#include <cctype>
#include <limits>
#include <ostream>
#include <string>

#include "fqm/errors.hpp"

namespace fqm {

namespace {

constexpr i128 kMax64 = std::numeric_limits<i64>::max();
constexpr i128 kMin64 = std::numeric_limits<i64>::min();
// Bound for decimal parsing intermediates; far below the i128 limit so that
// digit accumulation cannot itself overflow.
constexpr i128 kParseLimit = static_cast<i128>(1) << 100;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

}  // namespace

i64 narrow(i128 v, const char* context) {
    if (v > kMax64 || v < kMin64) {
        throw OverflowError(std::string("integer overflow in ") + context);
    }
    return static_cast<i64>(v);
}

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i128 mod_floor(i128 a, i128 b) {
    i128 r = a % b;
    if (r < 0) r += b;
    return r;
}

Rational::Rational(i64 n, i64 d) {
    if (d == 0) throw ValidationError("rational with zero denominator");
    *this = from_wide(n, d, "Rational");
}

Rational Rational::from_wide(i128 n, i128 d, const char* context) {
    if (d == 0) throw ValidationError(std::string("division by zero in ") + context);
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rational r;
    r.num_ = narrow(n, context);
    r.den_ = narrow(d, context);
    return r;
}

i64 Rational::floor() const { return static_cast<i64>(floor_div(num_, den_)); }

Rational Rational::operator-() const { return from_wide(-static_cast<i128>(num_), den_, "negation"); }

Rational operator+(const Rational& x, const Rational& y) {
    i128 n = static_cast<i128>(x.num_) * y.den_ + static_cast<i128>(y.num_) * x.den_;
    i128 d = static_cast<i128>(x.den_) * y.den_;
    return Rational::from_wide(n, d, "rational addition");
}

Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }

Rational operator*(const Rational& x, const Rational& y) {
    i128 n = static_cast<i128>(x.num_) * y.num_;
    i128 d = static_cast<i128>(x.den_) * y.den_;
    return Rational::from_wide(n, d, "rational multiplication");
}

Rational operator/(const Rational& x, const Rational& y) {
    if (y.num_ == 0) throw ValidationError("rational division by zero");
    i128 n = static_cast<i128>(x.num_) * y.den_;
    i128 d = static_cast<i128>(x.den_) * y.num_;
    return Rational::from_wide(n, d, "rational division");
}

std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
    i128 lhs = static_cast<i128>(x.num_) * y.den_;
    i128 rhs = static_cast<i128>(y.num_) * x.den_;
    return lhs <=> rhs;
}

Rational Rational::parse(std::string_view text) {
    auto fail = [&](const char* why) -> ValidationError {
        return ValidationError("cannot parse '" + std::string(text) + "' as a rational: " + why);
    };

    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw fail("empty");

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Rational n = parse(s.substr(0, slash));
        Rational d = parse(s.substr(slash + 1));
        if (d.is_zero()) throw fail("zero denominator");
        return n / d;
    }

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    i128 mantissa = 0;
    int scale = 0;  // value = mantissa * 10^(-scale)
    bool any_digit = false;
    bool seen_point = false;
    std::size_t i = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.') {
            if (seen_point) throw fail("second decimal point");
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            any_digit = true;
            mantissa = mantissa * 10 + (c - '0');
            if (mantissa > kParseLimit) throw fail("too many digits");
            if (seen_point) ++scale;
        } else {
            break;
        }
    }
    if (!any_digit) throw fail("no digits");

    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') throw fail("unexpected character");
        ++i;
        bool exp_negative = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            exp_negative = s[i] == '-';
            ++i;
        }
        if (i == s.size()) throw fail("empty exponent");
        int exponent = 0;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw fail("bad exponent");
            exponent = exponent * 10 + (s[i] - '0');
            if (exponent > 60) throw fail("exponent out of range");
        }
        scale += exp_negative ? exponent : -exponent;
    }

    i128 den = 1;
    while (scale > 0) {
        den *= 10;
        --scale;
        if (den > kParseLimit) throw fail("too many digits");
    }
    while (scale < 0) {
        mantissa *= 10;
        ++scale;
        if (mantissa > kParseLimit) throw fail("too large");
    }
    if (negative) mantissa = -mantissa;
    return from_wide(mantissa, den, "rational parse");
}

std::string Rational::str() const {
    std::string out = std::to_string(num_);
    if (den_ != 1) out += "/" + std::to_string(den_);
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace fqm
