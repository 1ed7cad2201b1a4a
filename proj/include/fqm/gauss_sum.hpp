#pragma once

#include "fqm/phase.hpp"

namespace fqm {

// Parameters of the quadratic Gauss sum  sum_{n=0}^{|g|-1} exp(pi i (c n^2 + d n) / g).
struct GaussSumParams {
    i64 c = 0;
    i64 d = 0;
    i64 g = 0;
};

// Phase of the n-th term, exact.
RationalPhase gauss_term_phase(const GaussSumParams& p, i64 n);

// Literal summation over |g| terms. Throws ValidationError when g == 0.
Amplitude gauss_sum_direct(const GaussSumParams& p);

// True iff c*g != 0 and c*g - d is even.
bool reciprocity_admissible(const GaussSumParams& p);

// Evaluates the reciprocity side
//   |g/c|^{1/2} exp(pi i (|cg| - d^2) / (4cg)) sum_{n=0}^{|c|-1} exp(-pi i (g n^2 + d n) / c).
// The prefactor phase is reduced exactly before it is evaluated. Throws
// ValidationError naming the failed condition when not admissible.
Amplitude gauss_sum_reciprocity(const GaussSumParams& p);

// Exact prefactor phase (|cg| - d^2) / (4cg), in units of pi.
RationalPhase reciprocity_prefactor_phase(const GaussSumParams& p);

}  // namespace fqm
