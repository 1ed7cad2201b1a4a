#pragma once

#include <complex>
#include <compare>
#include <map>
#include <span>
#include <string>

#include "fqm/rational.hpp"

namespace fqm {

using Amplitude = std::complex<double>;

/**
 * An angle num*pi/den held exactly, reduced modulo 2*pi.
 *
 * Invariants: den > 0, gcd(|num|, den) = 1, 0 <= num/den < 2.
 * Two phases compare equal iff they denote the same point on the unit
 * circle, so equality here is equality of e^{i*angle}.
 */
class RationalPhase {
public:
    RationalPhase() = default;  // zero phase, (0, 1)

    i64 num() const { return num_; }
    i64 den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    // Angle as a rational multiple of pi, in [0, 2).
    Rational turns_of_pi() const { return Rational(num_, den_); }

    RationalPhase operator-() const;
    friend RationalPhase operator+(const RationalPhase& x, const RationalPhase& y);
    friend RationalPhase operator-(const RationalPhase& x, const RationalPhase& y) { return x + (-y); }
    // Multiply the angle by an integer (e^{i k theta}).
    RationalPhase times(i64 k) const;

    friend bool operator==(const RationalPhase& x, const RationalPhase& y) = default;
    friend std::strong_ordering operator<=>(const RationalPhase& x, const RationalPhase& y);

    std::string str() const;

private:
    friend RationalPhase phase_normalize_wide(i128 num, i128 den);
    i64 num_ = 0;
    i64 den_ = 1;
};

// Canonical representative of the angle (num/den)*pi. Throws ValidationError
// for den == 0 and OverflowError if the reduced pair leaves 64 bits.
RationalPhase phase_normalize(i64 num, i64 den);
RationalPhase phase_normalize(const Rational& angle_over_pi);
RationalPhase phase_normalize_wide(i128 num, i128 den);

// cos(p*pi) + i sin(p*pi). Reduced to the first octant before calling the
// libm routines, so multiples of pi/2 come out exact.
Amplitude phase_to_complex(const RationalPhase& p);

/// Multiset of exact phases.
///
/// Summing through the histogram makes the value depend only on the
/// multiset of phases and the normalising weight, never on term order:
/// two sums whose multisets agree up to a common multiplicity produce
/// bit-identical results.
class PhaseHistogram {
public:
    void add(const RationalPhase& p, i64 count = 1);
    void add_all(std::span<const RationalPhase> phases);

    // sum over distinct phases of (count / denominator) * e^{i phase}
    Amplitude weighted_sum(i64 denominator) const;

    const std::map<RationalPhase, i64>& counts() const { return counts_; }
    i64 total() const { return total_; }

    // True iff every count here is exactly `factor` times the count in `base`
    // and both have the same support.
    bool is_scaled_copy_of(const PhaseHistogram& base, i64 factor) const;

private:
    std::map<RationalPhase, i64> counts_;
    i64 total_ = 0;
};

}  // namespace fqm
