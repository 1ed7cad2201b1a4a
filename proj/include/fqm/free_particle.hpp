#pragma once

#include <vector>

#include "fqm/finite_model.hpp"
#include "fqm/propagator.hpp"

namespace fqm {

/**
 * Free-particle propagation in the scaling a = h t / m, b = m / t, under
 * which the kernel is exp(-i pi x^2 / a) on v(x).
 *
 * Admissible parameters: a even and positive, x0 and x1 in [0, a) with
 * x1 - x0 an integer, a | N, and N x0 / a, N x1 / a integers.
 */
struct FreeParams {
    i64 a = 2;
    Rational x0;
    Rational x1;
    i64 N = 2;
    Variant variant = Variant::Standard;
};

// Throws SingularityError for a == 0 (t = 0) and ValidationError naming the
// first violated condition otherwise.
void validate(const FreeParams& p);

// Smallest N meeting every divisibility condition for (a, x0, x1).
i64 minimal_admissible_N(i64 a, const Rational& x0, const Rational& x1);

// Model with N = p.N, a = p.a and b = 1.
FiniteModel make_free_model(const FreeParams& p);

// v(x) -> exp(-/+ i pi x^2 / a) v(x).
ExactDiagonal free_kernel(const FiniteModel& model, const FreeParams& p);

// Phases of the N terms of <x1|K|x0> = (1/N) sum_n q^{-k0 n} K(n) q^{k1 n},
// assembled from the kernel diagonal and the basis-change phases.
std::vector<RationalPhase> free_full_sum_phases(const FiniteModel& model, const FreeParams& p);

// Phases pi (2 (x1 - x0) n -/+ n^2) / a, n < a.
std::vector<RationalPhase> free_reduced_sum_phases(const FreeParams& p);

// True iff the N-term phase multiset is exactly N/a copies of the a-term one.
bool free_reduction_is_exact(const FiniteModel& model, const FreeParams& p);

// <x1|K^t|x0>. The reference is the continuum kernel at the same a.
PropagatorResult free_propagator(const FiniteModel& model, const FreeParams& p, PropagatorMethod method);

// (m / 2 pi i hbar t)^{1/2} exp(i m (x0 - x1)^2 / 2 hbar t); the conjugate
// variant replaces i with -i. Throws SingularityError at t == 0.
Amplitude physics_reference(double m, double t, double hbar, double x0, double x1, Variant variant);

struct SpaceSize {
    double a = 0.0;       // h t / (m unit^2), dimensionless
    double length = 0.0;  // a * unit, metres
};

// Length of the position interval [0, a] at time t for a particle of mass
// `mass` (kg), with h in J s and lengths measured in `length_unit` metres.
SpaceSize space_size(double mass, double t, double h, double length_unit);

}  // namespace fqm
