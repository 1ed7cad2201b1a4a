#include "fqm/free_particle.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "fqm/errors.hpp"
#include "fqm/gauss_sum.hpp"

namespace fqm {

namespace {

std::string min_n_hint(const FreeParams& p) {
    return " (minimal admissible N = " + std::to_string(minimal_admissible_N(p.a, p.x0, p.x1)) + ")";
}

i64 delta_of(const FreeParams& p) { return (p.x1 - p.x0).num(); }

}  // namespace

i64 minimal_admissible_N(i64 a, const Rational& x0, const Rational& x1) {
    const i128 k = std::lcm(x0.den(), x1.den());
    return narrow(static_cast<i128>(a) * k, "minimal admissible N");
}

void validate(const FreeParams& p) {
    if (p.a == 0) throw SingularityError("a = 0 (t = 0): the space degenerates to a single point");
    if (p.a < 0) throw ValidationError("a must be a positive even integer, got " + std::to_string(p.a));
    if (p.a % 2 != 0) throw ValidationError("a must be even, got " + std::to_string(p.a));
    const Rational a(p.a);
    if (p.x0 < Rational(0) || p.x0 >= a) throw ValidationError("x0 must lie in [0, a), got " + p.x0.str());
    if (p.x1 < Rational(0) || p.x1 >= a) throw ValidationError("x1 must lie in [0, a), got " + p.x1.str());
    if (!(p.x1 - p.x0).is_integer()) {
        throw ValidationError("x1 - x0 must be an integer, got " + (p.x1 - p.x0).str());
    }
    if (p.N <= 1 || p.N % p.a != 0) {
        throw ValidationError("a must divide N, got a = " + std::to_string(p.a) + ", N = " + std::to_string(p.N) +
                              min_n_hint(p));
    }
    if (!(Rational(p.N) * p.x0 / a).is_integer()) {
        throw ValidationError("N*x0/a must be an integer, got N = " + std::to_string(p.N) + ", x0 = " + p.x0.str() +
                              min_n_hint(p));
    }
    if (!(Rational(p.N) * p.x1 / a).is_integer()) {
        throw ValidationError("N*x1/a must be an integer, got N = " + std::to_string(p.N) + ", x1 = " + p.x1.str() +
                              min_n_hint(p));
    }
}

FiniteModel make_free_model(const FreeParams& p) {
    validate(p);
    return make_model(p.N, Rational(p.a), Rational(p.a));
}

namespace {

void require_matching_model(const FiniteModel& model, const FreeParams& p) {
    validate(p);
    if (model.N() != p.N || model.a() != Rational(p.a)) {
        throw ValidationError("model (N = " + std::to_string(model.N()) + ", a = " + model.a().str() +
                              ") does not match the propagator parameters (N = " + std::to_string(p.N) +
                              ", a = " + std::to_string(p.a) + ")");
    }
}

}  // namespace

ExactDiagonal free_kernel(const FiniteModel& model, const FreeParams& p) {
    require_matching_model(model, p);
    const i128 sign = p.variant == Variant::Standard ? -1 : 1;
    const i128 mod = 2 * static_cast<i128>(p.a);
    ExactDiagonal d{Basis::V, {}};
    d.phase_at.reserve(static_cast<std::size_t>(model.N()));
    for (i64 x = 0; x < model.N(); ++x) {
        const i128 sq = mod_floor(static_cast<i128>(x) * x, mod);
        d.phase_at.push_back(phase_normalize_wide(sign * sq, p.a));
    }
    return d;
}

std::vector<RationalPhase> free_full_sum_phases(const FiniteModel& model, const FreeParams& p) {
    const ExactDiagonal kernel = free_kernel(model, p);
    const i64 n = model.N();
    const i64 k0 = model.position_index(p.x0);
    const i64 k1 = model.position_index(p.x1);
    std::vector<RationalPhase> out;
    out.reserve(static_cast<std::size_t>(n));
    for (i64 y = 0; y < n; ++y) {
        // <u(k1)| v(y)> <v(y)| u(k0)> = (1/N) q^{k1 y} q^{-k0 y}
        const i128 lin = mod_floor(static_cast<i128>(2) * (k1 - k0) * y, 2 * static_cast<i128>(n));
        out.push_back(kernel.phase_at[static_cast<std::size_t>(y)] + phase_normalize_wide(lin, n));
    }
    return out;
}

std::vector<RationalPhase> free_reduced_sum_phases(const FreeParams& p) {
    validate(p);
    const i128 sign = p.variant == Variant::Standard ? -1 : 1;
    const i128 delta = delta_of(p);
    const i128 mod = 2 * static_cast<i128>(p.a);
    std::vector<RationalPhase> out;
    out.reserve(static_cast<std::size_t>(p.a));
    for (i64 n = 0; n < p.a; ++n) {
        const i128 num = mod_floor(2 * delta * n + sign * n * n, mod);
        out.push_back(phase_normalize_wide(num, p.a));
    }
    return out;
}

bool free_reduction_is_exact(const FiniteModel& model, const FreeParams& p) {
    const auto full = free_full_sum_phases(model, p);
    const auto reduced = free_reduced_sum_phases(p);
    // Termwise: phase(n) == phase(n mod a), the periodicity that collapses
    // the N-term sum onto N/a copies of the a-term sum.
    for (std::size_t n = 0; n < full.size(); ++n) {
        if (full[n] != reduced[n % reduced.size()]) return false;
    }
    PhaseHistogram hf, hr;
    hf.add_all(full);
    hr.add_all(reduced);
    return hf.is_scaled_copy_of(hr, p.N / p.a);
}

namespace {

Amplitude free_closed_form(const FreeParams& p) {
    const i64 delta = delta_of(p);
    const GaussSumParams g = p.variant == Variant::Standard ? GaussSumParams{-1, 2 * delta, p.a}
                                                            : GaussSumParams{1, -2 * delta, p.a};
    return gauss_sum_reciprocity(g) / static_cast<double>(p.a);
}

Amplitude free_matrix_element(const FiniteModel& model, const FreeParams& p) {
    const i64 k0 = model.position_index(p.x0);
    const i64 k1 = model.position_index(p.x1);
    const StateVector evolved = apply_diagonal(model, free_kernel(model, p), basis_vector(model, Basis::U, k0));
    return evolved.amps[static_cast<std::size_t>(k1)];
}

}  // namespace

PropagatorResult free_propagator(const FiniteModel& model, const FreeParams& p, PropagatorMethod method) {
    require_matching_model(model, p);
    // Continuum kernel in units with m = 1, h = 1, so that a = t.
    const Amplitude reference = physics_reference(1.0, static_cast<double>(p.a), 0.5 / std::numbers::pi,
                                                  p.x0.to_double(), p.x1.to_double(), p.variant);
    Amplitude value;
    switch (method) {
        case PropagatorMethod::FullSum: {
            PhaseHistogram h;
            h.add_all(free_full_sum_phases(model, p));
            value = h.weighted_sum(p.N);
            break;
        }
        case PropagatorMethod::ReducedSum: {
            PhaseHistogram h;
            h.add_all(free_reduced_sum_phases(p));
            value = h.weighted_sum(p.a);
            break;
        }
        case PropagatorMethod::ClosedForm: value = free_closed_form(p); break;
        case PropagatorMethod::Matrix: value = free_matrix_element(model, p); break;
    }
    return make_result(method, value, reference);
}

Amplitude physics_reference(double m, double t, double hbar, double x0, double x1, Variant variant) {
    if (t == 0.0) throw SingularityError("t = 0: the propagator is singular");
    const double sign = variant == Variant::Standard ? 1.0 : -1.0;
    const double z = m / (2.0 * std::numbers::pi * hbar * t);
    const double dx = x0 - x1;
    // m / (2 pi i hbar t) = -i z, principal square root
    const Amplitude prefactor = std::sqrt(Amplitude(0.0, -sign * z));
    return prefactor * std::polar(1.0, sign * m * dx * dx / (2.0 * hbar * t));
}

SpaceSize space_size(double mass, double t, double h, double length_unit) {
    if (!(mass > 0.0)) throw ValidationError("mass must be positive");
    if (!(t >= 0.0)) throw ValidationError("time must be non-negative");
    if (!(h > 0.0)) throw ValidationError("h must be positive");
    if (!(length_unit > 0.0)) throw ValidationError("length unit must be positive");
    const double a = h * t / (mass * length_unit * length_unit);
    return {a, a * length_unit};
}

}  // namespace fqm
