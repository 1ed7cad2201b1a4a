#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fqm/phase.hpp"
#include "fqm/rational.hpp"

namespace fqm {

// u: position-like basis, v: its discrete Fourier dual.
enum class Basis { U, V };

const char* basis_name(Basis b);

/**
 * The N-dimensional model space with position scaling a, momentum scaling
 * b and Planck constant h, tied by a*b = h. q = exp(2 pi i / N) is derived.
 */
class FiniteModel {
public:
    static constexpr i64 kMaxDimension = i64{1} << 20;

    i64 N() const { return n_; }
    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& h() const { return h_; }

    // Index N*x/a of the u-basis vector sitting at position x. Throws
    // ValidationError when x is outside [0, a) or off the grid.
    i64 position_index(const Rational& x) const;

    friend FiniteModel make_model(i64 N, const Rational& a, const Rational& h);

private:
    FiniteModel(i64 n, Rational a, Rational b, Rational h) : n_(n), a_(a), b_(b), h_(h) {}
    i64 n_;
    Rational a_;
    Rational b_;
    Rational h_;
};

// Throws ValidationError for N <= 1, N above kMaxDimension, or a, h <= 0.
FiniteModel make_model(i64 N, const Rational& a, const Rational& h);

struct StateVector {
    Basis basis = Basis::U;
    std::vector<Amplitude> amps;

    std::size_t size() const { return amps.size(); }
};

// A unitary that is diagonal in `basis` with exact eigenphases.
struct ExactDiagonal {
    Basis basis = Basis::U;
    std::vector<RationalPhase> phase_at;
};

// Diagonal unitary with eigenphases in radians (for irrational angles).
struct FloatDiagonal {
    Basis basis = Basis::U;
    std::vector<double> angle;
};

// Reduced parameter of U^t (t_u = a t / 2 pi) or V^t (t_v = b t / 2 pi).
struct ReducedTime {
    enum class Kind { Position, Momentum };
    Kind kind = Kind::Position;
    Rational value;

    static ReducedTime position(Rational t_u) { return {Kind::Position, t_u}; }
    static ReducedTime momentum(Rational t_v) { return {Kind::Momentum, t_v}; }
};

StateVector basis_vector(const FiniteModel& model, Basis basis, i64 x);

// Coordinates of the same vector in `target`. Below kDefinitionalLimit the
// transform is the defining O(N^2) sum; at and above it, FFTW.
StateVector change_basis(const FiniteModel& model, const StateVector& s, Basis target);

inline constexpr i64 kDefinitionalLimit = 4096;

// The two DFT routes, both normalised by N^{-1/2}. `to` selects the
// direction: Basis::V computes sum_y q^{-xy} c_y, Basis::U sum_y q^{xy} c_y.
std::vector<Amplitude> dft_definitional(std::span<const Amplitude> in, Basis to);
std::vector<Amplitude> dft_fast(std::span<const Amplitude> in, Basis to);

Amplitude inner_product(const FiniteModel& model, const StateVector& x, const StateVector& y);
double norm(const StateVector& s);

ExactDiagonal identity_diagonal(const FiniteModel& model, Basis basis);

// U^t: u(x) -> q^{x t_u} u(x), phase 2 x t_u / N.
ExactDiagonal op_U(const FiniteModel& model, const ReducedTime& t);
// V^t: v(x) -> q^{x t_v} v(x).
ExactDiagonal op_V(const FiniteModel& model, const ReducedTime& t);
// (V^t)^N: v(x) -> exp(2 pi i x t_v) v(x).
ExactDiagonal op_Vstar(const FiniteModel& model, const ReducedTime& t);

// Pointwise product of two diagonals in the same basis.
ExactDiagonal compose(const ExactDiagonal& x, const ExactDiagonal& y);

StateVector apply_diagonal(const FiniteModel& model, const ExactDiagonal& d, const StateVector& s);
StateVector apply_diagonal(const FiniteModel& model, const FloatDiagonal& d, const StateVector& s);

/// Operator of the form u(x) -> e^{i pi phase[x]} u(target[x]).
///
/// Every diagonal in the u-basis is one, and so is every v-diagonal whose
/// phase is affine in the index with an integral slope (the wraparound shift).
/// Composition stays exact, which is what the commutator checks rely on.
struct MonomialOperator {
    std::vector<i64> target;
    std::vector<RationalPhase> phase;
};

std::optional<MonomialOperator> as_monomial(const FiniteModel& model, const ExactDiagonal& d);

// (outer o inner): apply `inner` first.
MonomialOperator compose(const MonomialOperator& outer, const MonomialOperator& inner);

// theta with x = e^{i pi theta} y, if such a global phase exists.
std::optional<RationalPhase> relative_phase(const MonomialOperator& x, const MonomialOperator& y);

// Exact phase theta with V^w U^t = e^{i pi theta} U^t V^w (or V_*^w when
// `starred`). Requires integer t_u, and integer w_v (unstarred) or integer
// N*w_v (starred); throws ValidationError otherwise. Both operator orders
// are applied to every basis vector; InvariantError if they disagree.
RationalPhase commutator_phase(const FiniteModel& model, const Rational& t_u, const Rational& w_v,
                               bool starred);

// Amplitudes of a vector in u-coordinates held exactly: common modulus
// squared and per-component phase. Zero components are not representable.
struct ExactAmplitudes {
    Rational modulus_sq;
    std::vector<RationalPhase> phases;

    friend bool operator==(const ExactAmplitudes&, const ExactAmplitudes&) = default;
};

// u-coordinates of v(x): modulus^2 1/N, phase 2 x y / N.
ExactAmplitudes v_vector_exact(const FiniteModel& model, i64 x);

}  // namespace fqm
