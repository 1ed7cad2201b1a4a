#include "fqm/weyl.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "fqm/errors.hpp"

namespace fqm {

namespace {

constexpr double kGridTol = 1e-9;
constexpr double kPhaseTol = 1e-12;

void require_grid_function(const WeylGrid& grid, const SampledFunction& f) {
    if (f.N != grid.N || f.a != grid.a || static_cast<i64>(f.samples.size()) != f.N) {
        throw ValidationError("sampled function does not live on the Weyl grid (N = " + std::to_string(grid.N) +
                              ", a = " + grid.a.str() + ")");
    }
}

double grid_point(const WeylGrid& grid, i64 k) {
    return grid.a.to_double() * static_cast<double>(k) / static_cast<double>(grid.N);
}

}  // namespace

void validate(const WeylGrid& grid) {
    if (!grid.a.is_positive()) throw ValidationError("grid length a must be positive");
    if (grid.N <= 1) throw ValidationError("grid must have N > 1 points");
    if (!(grid.hbar > 0.0)) throw ValidationError("hbar must be positive");
}

i64 shift_steps(const WeylGrid& grid, double t) {
    validate(grid);
    const double steps = t * grid.hbar * static_cast<double>(grid.N) / grid.a.to_double();
    const double r = std::round(steps);
    if (!std::isfinite(steps) || std::abs(steps - r) > kGridTol * std::max(1.0, std::abs(steps))) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "t*hbar*N/a = " << steps << " is not an integer; nearest admissible t = "
            << r * grid.a.to_double() / (grid.hbar * static_cast<double>(grid.N));
        throw ValidationError(msg.str());
    }
    return static_cast<i64>(r);
}

i64 wrap_count(const WeylGrid& grid, i64 k, i64 steps) {
    return static_cast<i64>(floor_div(static_cast<i128>(k) + steps, grid.N));
}

SampledFunction translate(const WeylGrid& grid, double t, const SampledFunction& f) {
    require_grid_function(grid, f);
    const i64 steps = shift_steps(grid, t);
    SampledFunction out{f.a, f.N, std::vector<Amplitude>(f.samples.size()), std::monostate{}};
    for (i64 k = 0; k < grid.N; ++k) {
        const auto src = static_cast<std::size_t>(mod_floor(static_cast<i128>(k) + steps, grid.N));
        out.samples[static_cast<std::size_t>(k)] = f.samples[src];
    }
    return out;
}

SampledFunction multiply_expQ(const WeylGrid& grid, double s, const SampledFunction& f) {
    require_grid_function(grid, f);
    SampledFunction out{f.a, f.N, f.samples, std::monostate{}};
    for (i64 k = 0; k < grid.N; ++k) out.samples[static_cast<std::size_t>(k)] *= std::polar(1.0, s * grid_point(grid, k));
    return out;
}

Amplitude weyl_commutator(const WeylGrid& grid, double s, double t, i64 k, const SampledFunction& f) {
    require_grid_function(grid, f);
    if (k < 0 || k >= grid.N) throw ValidationError("grid index out of range: " + std::to_string(k));
    const i64 steps = shift_steps(grid, t);
    const auto shifted = static_cast<std::size_t>(mod_floor(static_cast<i128>(k) + steps, grid.N));
    if (std::abs(f.samples[shifted]) < 1e-300) {
        throw ValidationError("f vanishes at the translated point; commutator ratio undefined at k = " +
                              std::to_string(k));
    }
    const auto idx = static_cast<std::size_t>(k);
    const Amplitude q_then_p = multiply_expQ(grid, s, translate(grid, t, f)).samples[idx];
    const Amplitude p_then_q = translate(grid, t, multiply_expQ(grid, s, f)).samples[idx];
    return p_then_q / q_then_p;
}

i64 expected_wrapped_points(i64 steps, i64 N) {
    if (steps >= N) return N;
    if (steps >= 0) return steps;
    return -steps >= N ? N : -steps;
}

WeylReport weyl_violation_report(const WeylGrid& grid, double s, double t) {
    const i64 steps = shift_steps(grid, t);
    const double a = grid.a.to_double();
    const double th = t * grid.hbar;
    const Amplitude naive = std::polar(1.0, s * th);
    WeylReport r;
    r.N = grid.N;
    r.shift_steps = steps;
    for (i64 k = 0; k < grid.N; ++k) {
        const i64 m = wrap_count(grid, k, steps);
        if (m != 0) ++r.wrapped_points;
        const Amplitude actual = std::polar(1.0, s * th - s * a * static_cast<double>(m));
        if (std::abs(actual - naive) > kPhaseTol) ++r.phase_mismatch_points;
    }
    r.fraction = static_cast<double>(r.wrapped_points) / static_cast<double>(grid.N);
    r.phase_mismatch_fraction = static_cast<double>(r.phase_mismatch_points) / static_cast<double>(grid.N);
    return r;
}

}  // namespace fqm
