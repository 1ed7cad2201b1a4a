#pragma once

#include <variant>
#include <vector>

#include "fqm/finite_model.hpp"

namespace fqm {

// f_n(x) = a^{-1/2} exp(2 pi i n x / a)
struct FourierMode {
    i64 n = 0;
};

// f(x) = sum_i coeffs[i] x^i, real coefficients.
struct Polynomial {
    std::vector<double> coeffs;
};

/// Samples f(a k / N), k = 0..N-1, of a function on [0, a].
///
/// The optional descriptor records where the samples came from, so that
/// identities that hold exactly for Fourier modes can be checked exactly
/// instead of through floating-point sums.
struct SampledFunction {
    Rational a;
    i64 N = 0;
    std::vector<Amplitude> samples;
    std::variant<std::monostate, FourierMode, Polynomial> descriptor;
};

// Rejects |n| >= N/2 (aliased modes).
void check_mode_alias(i64 N, i64 n);

SampledFunction sample_mode(const Rational& a, i64 N, i64 n);
SampledFunction sample_polynomial(const Rational& a, i64 N, std::vector<double> coeffs);
// exp(-(x - center)^2 / (2 width^2))
SampledFunction sample_gaussian(const Rational& a, i64 N, double center, double width);
SampledFunction from_samples(const Rational& a, i64 N, std::vector<Amplitude> samples);

// sum_k (a/N)^{1/2} f(a_k) u(k)
StateVector embed(const FiniteModel& model, const SampledFunction& f);

// The image of f_n held exactly: modulus^2 1/N, phases 2 n k / N.
ExactAmplitudes embed_mode_exact(const FiniteModel& model, i64 n);

// (a/N) sum_k |f(a_k)|^2. For Fourier-mode samples the sum is formed in
// exact arithmetic and is exactly 1.
double embedded_norm_sq(const FiniteModel& model, const SampledFunction& f);

// Integral of |f|^2 over [0, a] and the left-Riemann error constant
// C with |(a/N) sum |f(a_k)|^2 - integral| <= C / N, C = a^2 max|g'| / 2
// for g = |f|^2 (max bounded termwise on [0, a]).
double polynomial_norm_sq_integral(const Polynomial& f, double a);
double riemann_error_constant(const Polynomial& f, double a);

// u(k) -> exp(i alpha (k a / N)^2) u(k)
FloatDiagonal op_expQ2(const FiniteModel& model, double alpha);
// Same operator when alpha / pi is the rational r: phase r (k a / N)^2.
ExactDiagonal op_expQ2_exact(const FiniteModel& model, const Rational& alpha_over_pi);

// v(k) -> exp(i alpha (b k)^2) v(k). The float form is not stable in N
// unless alpha b^2 / pi is rational; use the exact form when it is.
FloatDiagonal op_expP2(const FiniteModel& model, double alpha);
// phase r k^2 with r = alpha b^2 / pi
ExactDiagonal op_expP2_exact(const FiniteModel& model, const Rational& alpha_b2_over_pi);

}  // namespace fqm
