#include "fqm/finite_model.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <string>

#include "fqm/errors.hpp"

namespace fqm {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

void require_same_size(const FiniteModel& model, std::size_t size, const char* what) {
    if (static_cast<i64>(size) != model.N()) {
        throw ValidationError(std::string(what) + " has length " + std::to_string(size) +
                              " but the model has N = " + std::to_string(model.N()));
    }
}

}  // namespace

const char* basis_name(Basis b) { return b == Basis::U ? "U" : "V"; }

FiniteModel make_model(i64 N, const Rational& a, const Rational& h) {
    if (N <= 1) throw ValidationError("model dimension must satisfy N > 1, got N = " + std::to_string(N));
    if (N > FiniteModel::kMaxDimension) {
        throw ValidationError("model dimension N = " + std::to_string(N) + " exceeds the cap " +
                              std::to_string(FiniteModel::kMaxDimension));
    }
    if (!a.is_positive()) throw ValidationError("position scaling a must be positive, got " + a.str());
    if (!h.is_positive()) throw ValidationError("Planck constant h must be positive, got " + h.str());
    return FiniteModel(N, a, h / a, h);
}

i64 FiniteModel::position_index(const Rational& x) const {
    if (x < Rational(0) || x >= a_) {
        throw ValidationError("position " + x.str() + " outside [0, a) with a = " + a_.str());
    }
    Rational idx = Rational(n_) * x / a_;
    if (!idx.is_integer()) {
        throw ValidationError("N*x/a must be an integer: N = " + std::to_string(n_) + ", x = " + x.str() +
                              ", a = " + a_.str());
    }
    return idx.num();
}

StateVector basis_vector(const FiniteModel& model, Basis basis, i64 x) {
    if (x < 0 || x >= model.N()) {
        throw ValidationError("basis index " + std::to_string(x) + " outside [0, " + std::to_string(model.N()) + ")");
    }
    StateVector s{basis, std::vector<Amplitude>(static_cast<std::size_t>(model.N()))};
    s.amps[static_cast<std::size_t>(x)] = 1.0;
    return s;
}

std::vector<Amplitude> dft_definitional(std::span<const Amplitude> in, Basis to) {
    const i64 n = static_cast<i64>(in.size());
    std::vector<Amplitude> roots(in.size());
    for (i64 k = 0; k < n; ++k) roots[static_cast<std::size_t>(k)] = phase_to_complex(phase_normalize(2 * k, n));

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<Amplitude> out(in.size());
    for (i64 x = 0; x < n; ++x) {
        const i64 step = to == Basis::V ? (n - x) % n : x;  // q^{-xy} or q^{xy}
        double re = 0.0;
        double im = 0.0;
        i64 k = 0;
        for (i64 y = 0; y < n; ++y) {
            const Amplitude r = roots[static_cast<std::size_t>(k)];
            const Amplitude c = in[static_cast<std::size_t>(y)];
            re += r.real() * c.real() - r.imag() * c.imag();
            im += r.real() * c.imag() + r.imag() * c.real();
            k += step;
            if (k >= n) k -= n;
        }
        out[static_cast<std::size_t>(x)] = Amplitude(re * scale, im * scale);
    }
    return out;
}

std::vector<Amplitude> dft_fast(std::span<const Amplitude> in, Basis to) {
    const int n = static_cast<int>(in.size());
    std::vector<Amplitude> buf(in.begin(), in.end());
    std::vector<Amplitude> out(in.size());
    auto* src = reinterpret_cast<fftw_complex*>(buf.data());
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(n, src, dst, to == Basis::V ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& z : out) z *= scale;
    return out;
}

StateVector change_basis(const FiniteModel& model, const StateVector& s, Basis target) {
    require_same_size(model, s.size(), "state vector");
    if (s.basis == target) return s;
    StateVector out{target, {}};
    out.amps = model.N() < kDefinitionalLimit ? dft_definitional(s.amps, target) : dft_fast(s.amps, target);
    return out;
}

Amplitude inner_product(const FiniteModel& model, const StateVector& x, const StateVector& y) {
    require_same_size(model, x.size(), "bra");
    require_same_size(model, y.size(), "ket");
    const StateVector yy = change_basis(model, y, x.basis);
    Amplitude acc{0.0, 0.0};
    for (std::size_t i = 0; i < x.amps.size(); ++i) acc += std::conj(x.amps[i]) * yy.amps[i];
    return acc;
}

double norm(const StateVector& s) {
    double acc = 0.0;
    for (const auto& z : s.amps) acc += std::norm(z);
    return std::sqrt(acc);
}

ExactDiagonal identity_diagonal(const FiniteModel& model, Basis basis) {
    return {basis, std::vector<RationalPhase>(static_cast<std::size_t>(model.N()))};
}

namespace {

void require_kind(const ReducedTime& t, ReducedTime::Kind kind, const char* op) {
    if (t.kind != kind) {
        throw ValidationError(std::string(op) + " takes a " +
                              (kind == ReducedTime::Kind::Position ? "position (t_u)" : "momentum (t_v)") +
                              " reduced time");
    }
}

// phase 2 x r / denom for x = 0..N-1
ExactDiagonal linear_phase_diagonal(const FiniteModel& model, Basis basis, const Rational& r, i64 denom) {
    ExactDiagonal d{basis, {}};
    d.phase_at.reserve(static_cast<std::size_t>(model.N()));
    const i128 num = 2 * static_cast<i128>(r.num());
    const i128 den = static_cast<i128>(r.den()) * denom;
    for (i64 x = 0; x < model.N(); ++x) d.phase_at.push_back(phase_normalize_wide(mod_floor(num * x, 2 * den), den));
    return d;
}

}  // namespace

ExactDiagonal op_U(const FiniteModel& model, const ReducedTime& t) {
    require_kind(t, ReducedTime::Kind::Position, "op_U");
    return linear_phase_diagonal(model, Basis::U, t.value, model.N());
}

ExactDiagonal op_V(const FiniteModel& model, const ReducedTime& t) {
    require_kind(t, ReducedTime::Kind::Momentum, "op_V");
    return linear_phase_diagonal(model, Basis::V, t.value, model.N());
}

ExactDiagonal op_Vstar(const FiniteModel& model, const ReducedTime& t) {
    require_kind(t, ReducedTime::Kind::Momentum, "op_Vstar");
    return linear_phase_diagonal(model, Basis::V, t.value, 1);
}

ExactDiagonal compose(const ExactDiagonal& x, const ExactDiagonal& y) {
    if (x.basis != y.basis) throw ValidationError("cannot compose diagonals in different bases");
    if (x.phase_at.size() != y.phase_at.size()) throw ValidationError("cannot compose diagonals of different size");
    ExactDiagonal out{x.basis, {}};
    out.phase_at.reserve(x.phase_at.size());
    for (std::size_t i = 0; i < x.phase_at.size(); ++i) out.phase_at.push_back(x.phase_at[i] + y.phase_at[i]);
    return out;
}

namespace {

template <typename Factor>
StateVector apply_diagonal_impl(const FiniteModel& model, Basis basis, std::size_t size, const StateVector& s,
                                Factor factor) {
    require_same_size(model, size, "diagonal");
    StateVector work = change_basis(model, s, basis);
    for (std::size_t i = 0; i < work.amps.size(); ++i) work.amps[i] *= factor(i);
    return change_basis(model, work, s.basis);
}

}  // namespace

StateVector apply_diagonal(const FiniteModel& model, const ExactDiagonal& d, const StateVector& s) {
    return apply_diagonal_impl(model, d.basis, d.phase_at.size(), s,
                               [&](std::size_t i) { return phase_to_complex(d.phase_at[i]); });
}

StateVector apply_diagonal(const FiniteModel& model, const FloatDiagonal& d, const StateVector& s) {
    return apply_diagonal_impl(model, d.basis, d.angle.size(), s,
                               [&](std::size_t i) { return std::polar(1.0, d.angle[i]); });
}

std::optional<MonomialOperator> as_monomial(const FiniteModel& model, const ExactDiagonal& d) {
    const i64 n = model.N();
    require_same_size(model, d.phase_at.size(), "diagonal");
    MonomialOperator m;
    m.target.resize(static_cast<std::size_t>(n));
    m.phase.resize(static_cast<std::size_t>(n));

    if (d.basis == Basis::U) {
        for (i64 x = 0; x < n; ++x) {
            m.target[static_cast<std::size_t>(x)] = x;
            m.phase[static_cast<std::size_t>(x)] = d.phase_at[static_cast<std::size_t>(x)];
        }
        return m;
    }

    // v(y) -> e^{i pi (theta0 + 2 k y / N)} v(y) acts on u(x) as
    // u(x) -> e^{i pi theta0} u(x - k mod N).
    const RationalPhase theta0 = d.phase_at[0];
    const RationalPhase step = d.phase_at[1] - theta0;
    const Rational k_rational = step.turns_of_pi() * Rational(n) / Rational(2);
    if (!k_rational.is_integer()) return std::nullopt;
    const i64 k = k_rational.num();
    for (i64 y = 0; y < n; ++y) {
        const RationalPhase expected = theta0 + phase_normalize_wide(mod_floor(static_cast<i128>(2) * k * y, 2 * n), n);
        if (d.phase_at[static_cast<std::size_t>(y)] != expected) return std::nullopt;
    }
    for (i64 x = 0; x < n; ++x) {
        m.target[static_cast<std::size_t>(x)] = static_cast<i64>(mod_floor(static_cast<i128>(x) - k, n));
        m.phase[static_cast<std::size_t>(x)] = theta0;
    }
    return m;
}

MonomialOperator compose(const MonomialOperator& outer, const MonomialOperator& inner) {
    if (outer.target.size() != inner.target.size()) throw ValidationError("cannot compose operators of different size");
    MonomialOperator out;
    out.target.resize(inner.target.size());
    out.phase.resize(inner.target.size());
    for (std::size_t x = 0; x < inner.target.size(); ++x) {
        const auto mid = static_cast<std::size_t>(inner.target[x]);
        out.target[x] = outer.target[mid];
        out.phase[x] = inner.phase[x] + outer.phase[mid];
    }
    return out;
}

std::optional<RationalPhase> relative_phase(const MonomialOperator& x, const MonomialOperator& y) {
    if (x.target.size() != y.target.size() || x.target.empty()) return std::nullopt;
    const RationalPhase theta = x.phase[0] - y.phase[0];
    for (std::size_t i = 0; i < x.target.size(); ++i) {
        if (x.target[i] != y.target[i]) return std::nullopt;
        if (x.phase[i] - y.phase[i] != theta) return std::nullopt;
    }
    return theta;
}

RationalPhase commutator_phase(const FiniteModel& model, const Rational& t_u, const Rational& w_v, bool starred) {
    if (!t_u.is_integer()) throw ValidationError("commutator law requires t_u to be an integer, got " + t_u.str());
    if (!starred && !w_v.is_integer()) {
        throw ValidationError("commutator law requires w_v to be an integer, got " + w_v.str());
    }
    if (starred && !(Rational(model.N()) * w_v).is_integer()) {
        throw ValidationError("starred commutator law requires N*w_v to be an integer, got N = " +
                              std::to_string(model.N()) + ", w_v = " + w_v.str());
    }

    const auto u_op = as_monomial(model, op_U(model, ReducedTime::position(t_u)));
    const ExactDiagonal v_diag =
        starred ? op_Vstar(model, ReducedTime::momentum(w_v)) : op_V(model, ReducedTime::momentum(w_v));
    const auto v_op = as_monomial(model, v_diag);
    if (!u_op || !v_op) throw InvariantError("U^t or V^w is not a phased shift under integral parameters");

    const MonomialOperator vu = compose(*v_op, *u_op);
    const MonomialOperator uv = compose(*u_op, *v_op);
    const auto theta = relative_phase(vu, uv);
    if (!theta) throw InvariantError("V^w U^t and U^t V^w differ by more than a global phase");
    return *theta;
}

ExactAmplitudes v_vector_exact(const FiniteModel& model, i64 x) {
    if (x < 0 || x >= model.N()) {
        throw ValidationError("basis index " + std::to_string(x) + " outside [0, " + std::to_string(model.N()) + ")");
    }
    ExactAmplitudes out{Rational(1, model.N()), {}};
    out.phases.reserve(static_cast<std::size_t>(model.N()));
    for (i64 y = 0; y < model.N(); ++y) {
        out.phases.push_back(phase_normalize_wide(mod_floor(static_cast<i128>(2) * x * y, 2 * static_cast<i128>(model.N())),
                                                  model.N()));
    }
    return out;
}

}  // namespace fqm
