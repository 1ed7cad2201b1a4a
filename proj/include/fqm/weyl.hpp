#pragma once

#include "fqm/embedding.hpp"

namespace fqm {

// Sample grid x_k = a k / N on [0, a) with periodic boundary f(0) = f(a).
struct WeylGrid {
    Rational a;
    i64 N = 0;
    double hbar = 1.0;
};

void validate(const WeylGrid& grid);

// t hbar N / a, the translation of exp(itP) in grid steps. Throws
// ValidationError (with the nearest admissible t) when it is not an integer.
i64 shift_steps(const WeylGrid& grid, double t);

// m_{x,t}: the unique integer with 0 <= x_k + t hbar - a m < a.
i64 wrap_count(const WeylGrid& grid, i64 k, i64 steps);

// exp(itP) f (x) = f(x + t hbar - a m_{x,t}): a cyclic shift of the samples.
SampledFunction translate(const WeylGrid& grid, double t, const SampledFunction& f);

// exp(isQ) f (x) = exp(i s x) f(x)
SampledFunction multiply_expQ(const WeylGrid& grid, double s, const SampledFunction& f);

// (exp(itP) exp(isQ) f)(x_k) / (exp(isQ) exp(itP) f)(x_k), which equals
// exp(i s t hbar - i s a m_{x,t}). ValidationError if f vanishes where the
// ratio is formed.
Amplitude weyl_commutator(const WeylGrid& grid, double s, double t, i64 k, const SampledFunction& f);

struct WeylReport {
    i64 N = 0;
    i64 shift_steps = 0;
    i64 wrapped_points = 0;          // #{k : m_{x_k,t} != 0}
    double fraction = 0.0;           // wrapped_points / N
    i64 phase_mismatch_points = 0;   // #{k : exp(i s t hbar - i s a m) != exp(i s t hbar)}
    double phase_mismatch_fraction = 0.0;
};

WeylReport weyl_violation_report(const WeylGrid& grid, double s, double t);

// Closed-form count of grid points that wrap for a shift of `steps`.
i64 expected_wrapped_points(i64 steps, i64 N);

}  // namespace fqm
