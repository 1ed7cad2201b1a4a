#include "fqm/phase.hpp"

#include <cmath>
#include <numbers>

#include "fqm/errors.hpp"

namespace fqm {

RationalPhase phase_normalize_wide(i128 num, i128 den) {
    if (den == 0) throw ValidationError("phase with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    // reduce num/den into [0, 2)
    num = mod_floor(num, 2 * den);
    RationalPhase p;
    p.num_ = narrow(num, "phase normalization");
    p.den_ = narrow(den, "phase normalization");
    return p;
}

RationalPhase phase_normalize(i64 num, i64 den) { return phase_normalize_wide(num, den); }

RationalPhase phase_normalize(const Rational& angle_over_pi) {
    return phase_normalize_wide(angle_over_pi.num(), angle_over_pi.den());
}

RationalPhase RationalPhase::operator-() const { return phase_normalize_wide(-static_cast<i128>(num_), den_); }

RationalPhase operator+(const RationalPhase& x, const RationalPhase& y) {
    // Reduce the common denominator by the gcd first; keeps intermediates small.
    i128 g = gcd128(x.den_, y.den_);
    i128 lx = y.den_ / g;
    i128 ly = x.den_ / g;
    i128 n = static_cast<i128>(x.num_) * lx + static_cast<i128>(y.num_) * ly;
    i128 d = static_cast<i128>(x.den_) * lx;
    return phase_normalize_wide(n, d);
}

RationalPhase RationalPhase::times(i64 k) const {
    // Only k mod 2*den matters for the product angle.
    i128 kk = mod_floor(k, 2 * static_cast<i128>(den_));
    return phase_normalize_wide(kk * num_, den_);
}

std::strong_ordering operator<=>(const RationalPhase& x, const RationalPhase& y) {
    return static_cast<i128>(x.num_) * y.den_ <=> static_cast<i128>(y.num_) * x.den_;
}

std::string RationalPhase::str() const {
    if (den_ == 1) return std::to_string(num_) + "pi";
    return std::to_string(num_) + "pi/" + std::to_string(den_);
}

Amplitude phase_to_complex(const RationalPhase& p) {
    const i128 num = p.num();
    const i128 den = p.den();
    // angle = (pi/2) * (2 num / den); split into quadrant and remainder
    const i128 twice = 2 * num;
    const int quadrant = static_cast<int>(twice / den);
    const i128 rem = twice - static_cast<i128>(quadrant) * den;

    double c = 1.0;
    double s = 0.0;
    if (rem != 0) {
        constexpr double half_pi = std::numbers::pi / 2.0;
        if (2 * rem <= den) {
            double phi = half_pi * (static_cast<double>(rem) / static_cast<double>(den));
            c = std::cos(phi);
            s = std::sin(phi);
        } else {
            double psi = half_pi * (static_cast<double>(den - rem) / static_cast<double>(den));
            c = std::sin(psi);
            s = std::cos(psi);
        }
    }
    switch (quadrant) {
        case 0: return {c, s};
        case 1: return {-s, c};
        case 2: return {-c, -s};
        default: return {s, -c};
    }
}

void PhaseHistogram::add(const RationalPhase& p, i64 count) {
    counts_[p] += count;
    total_ += count;
}

void PhaseHistogram::add_all(std::span<const RationalPhase> phases) {
    for (const auto& p : phases) add(p);
}

Amplitude PhaseHistogram::weighted_sum(i64 denominator) const {
    if (denominator == 0) throw ValidationError("phase sum with zero weight denominator");
    const double d = static_cast<double>(denominator);
    Amplitude acc{0.0, 0.0};
    for (const auto& [phase, count] : counts_) {
        acc += (static_cast<double>(count) / d) * phase_to_complex(phase);
    }
    return acc;
}

bool PhaseHistogram::is_scaled_copy_of(const PhaseHistogram& base, i64 factor) const {
    if (counts_.size() != base.counts_.size()) return false;
    auto it = counts_.begin();
    for (const auto& [phase, count] : base.counts_) {
        if (it->first != phase) return false;
        if (it->second != static_cast<i128>(count) * factor) return false;
        ++it;
    }
    return true;
}

}  // namespace fqm
