#include "fqm/oscillator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "fqm/embedding.hpp"
#include "fqm/errors.hpp"
#include "fqm/gauss_sum.hpp"

namespace fqm {

namespace {

constexpr double kSingularTol = 1e-12;
constexpr double kSeriesCutoff = 1e-4;
constexpr double kScaleTol = 1e-9;
constexpr double kBetaTol = 1e-12;

using std::numbers::pi;

}  // namespace

OscParams OscParams::make(double m, double omega, double t, double hbar) {
    if (!(m > 0.0)) throw ValidationError("mass must be positive");
    if (!(omega > 0.0)) throw ValidationError("omega must be positive");
    if (!(hbar > 0.0)) throw ValidationError("hbar must be positive");
    if (!std::isfinite(t)) throw ValidationError("time must be finite");
    if (std::abs(std::sin(omega * t)) < kSingularTol) {
        throw SingularityError("sin(omega t) = 0: propagator singular");
    }
    return OscParams(m, omega, t, hbar);
}

OscParams OscParams::from_scale(double a, double omega_t) {
    if (!(a > 0.0)) throw ValidationError("scale a must be positive");
    const double s = std::sin(omega_t);
    if (std::abs(s) < kSingularTol) throw SingularityError("sin(omega t) = 0: propagator singular");
    // a = 2 pi hbar sin(wt) / (m w) with m = w = 1
    return make(1.0, 1.0, omega_t, a / (2.0 * pi * s));
}

double OscParams::h() const { return 2.0 * pi * hbar_; }

double OscParams::scale_a() const { return h() * std::sin(omega_t()) / (m_ * omega_); }

SplitCoefficients factor_coefficients_generic(double gamma) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ValidationError("gamma must be a finite non-negative real");
    const double x = std::sqrt(gamma);
    if (x < kSeriesCutoff) {
        // tan(x/2)/x = 1/2 + x^2/24 + ..., sin(x)/x = 1 - x^2/6 + ...
        return {0.5 + gamma / 24.0, 1.0 - gamma / 6.0};
    }
    if (std::abs(std::cos(x / 2.0)) < kSingularTol) {
        throw SingularityError("tan(sqrt(gamma)/2) has a pole at gamma = " + std::to_string(gamma));
    }
    if (std::abs(std::sin(x)) < kSingularTol) {
        throw SingularityError("sin(sqrt(gamma)) = 0 at gamma = " + std::to_string(gamma));
    }
    return {std::tan(x / 2.0) / x, std::sin(x) / x};
}

SplitCoefficients osc_coefficients(const OscParams& p) {
    // A = -(i t m w^2 / 2 hbar) Q^2, B = -(i t / 2 m hbar) P^2, gamma = t^2 w^2
    const SplitCoefficients g = factor_coefficients_generic(p.gamma());
    const double t = p.t();
    return {-t * p.m() * p.omega() * p.omega() / (2.0 * p.hbar()) * g.alpha, -t / (2.0 * p.m() * p.hbar()) * g.beta};
}

double factorization_residual(double gamma, int dim, std::complex<double> lambda) {
    if (dim < 2) throw ValidationError("representation dimension must be at least 2");
    if (lambda == 0.0) throw ValidationError("lambda must be nonzero");
    using Mat = Eigen::MatrixXcd;
    // spin j = (dim - 1)/2, basis |j, m>, m = j, j-1, ..., -j
    const double j = (dim - 1) / 2.0;
    Mat e = Mat::Zero(dim, dim);
    Mat f = Mat::Zero(dim, dim);
    for (int k = 1; k < dim; ++k) {
        const double m = j - k;  // E|j,m> = sqrt((j-m)(j+m+1)) |j,m+1>
        const double c = std::sqrt((j - m) * (j + m + 1.0));
        e(k - 1, k) = c;
        f(k, k - 1) = c;
    }
    // [E,F] = 2 J_z, so with A = lambda E, B = mu F, lambda mu = -gamma:
    // [A,C] = 2 gamma A and [B,C] = -2 gamma B for C = [A,B].
    const std::complex<double> mu = -gamma / lambda;
    const Mat a = lambda * e;
    const Mat b = mu * f;
    const SplitCoefficients s = factor_coefficients_generic(gamma);
    const Mat lhs = (a + b).exp();
    const Mat ea = (s.alpha * a).exp();
    const Mat rhs = ea * (s.beta * b).exp() * ea;
    return (lhs - rhs).norm();
}

i64 admissible_scale(const OscParams& p) {
    const double a = p.scale_a();
    const double r = std::round(a);
    if (!(a > 0.0) || std::abs(a - r) > kScaleTol * std::max(1.0, std::abs(a))) {
        throw ValidationError("position scaling a = h sin(wt)/(m w) = " + std::to_string(a) +
                              " must be an even positive integer");
    }
    const auto ai = static_cast<i64>(r);
    if (ai % 2 != 0) throw ValidationError("a must be even, got " + std::to_string(ai));
    return ai;
}

FiniteModel make_osc_model(const OscParams& p, i64 N) {
    const i64 a = admissible_scale(p);
    return make_model(N, Rational(a), Rational(a));
}

double model_beta(const OscParams& p) {
    const double b = p.h() / static_cast<double>(admissible_scale(p));
    return osc_coefficients(p).beta * b * b;
}

Rational beta_b2_over_pi(const OscParams& p) {
    const i64 a = admissible_scale(p);
    const double b = p.h() / static_cast<double>(a);
    const double observed = osc_coefficients(p).beta * b * b / pi;
    const double expected = -1.0 / static_cast<double>(a);
    if (std::abs(observed - expected) > kBetaTol * std::abs(expected)) {
        throw InvariantError("beta b^2 / pi = " + std::to_string(observed) + " differs from -1/a = " +
                             std::to_string(expected));
    }
    return Rational(-1, a);
}

namespace {

struct OscGrid {
    i64 a;
    i64 k0;
    i64 k1;
    i64 delta;
};

OscGrid check_osc(const FiniteModel& model, const OscParams& p, const Rational& x0, const Rational& x1) {
    const i64 a = admissible_scale(p);
    if (model.a() != Rational(a)) {
        throw ValidationError("model scaling a = " + model.a().str() + " does not match the oscillator scaling " +
                              std::to_string(a));
    }
    if (model.N() % a != 0) {
        throw ValidationError("a must divide N, got a = " + std::to_string(a) + ", N = " + std::to_string(model.N()));
    }
    const Rational delta = x1 - x0;
    if (!delta.is_integer()) throw ValidationError("x1 - x0 must be an integer, got " + delta.str());
    return {a, model.position_index(x0), model.position_index(x1), delta.num()};
}

Amplitude alpha_prefactor(const OscParams& p, const Rational& x0, const Rational& x1) {
    const double u = x0.to_double();
    const double v = x1.to_double();
    return std::polar(1.0, osc_coefficients(p).alpha * (u * u + v * v));
}

}  // namespace

std::vector<RationalPhase> osc_full_sum_phases(const FiniteModel& model, const OscParams& p, const Rational& x0,
                                               const Rational& x1) {
    const OscGrid g = check_osc(model, p, x0, x1);
    const ExactDiagonal b_diag = op_expP2_exact(model, beta_b2_over_pi(p));
    const i64 n = model.N();
    std::vector<RationalPhase> out;
    out.reserve(static_cast<std::size_t>(n));
    for (i64 y = 0; y < n; ++y) {
        const i128 lin = mod_floor(static_cast<i128>(2) * (g.k1 - g.k0) * y, 2 * static_cast<i128>(n));
        out.push_back(b_diag.phase_at[static_cast<std::size_t>(y)] + phase_normalize_wide(lin, n));
    }
    return out;
}

std::vector<RationalPhase> osc_reduced_sum_phases(const OscParams& p, const Rational& x0, const Rational& x1) {
    const i64 a = admissible_scale(p);
    const Rational delta = x1 - x0;
    if (!delta.is_integer()) throw ValidationError("x1 - x0 must be an integer, got " + delta.str());
    const i128 d = delta.num();
    std::vector<RationalPhase> out;
    out.reserve(static_cast<std::size_t>(a));
    for (i64 y = 0; y < a; ++y) out.push_back(phase_normalize_wide(mod_floor(2 * d * y - static_cast<i128>(y) * y, 2 * static_cast<i128>(a)), a));
    return out;
}

bool osc_reduction_is_exact(const FiniteModel& model, const OscParams& p, const Rational& x0, const Rational& x1) {
    const auto full = osc_full_sum_phases(model, p, x0, x1);
    const auto reduced = osc_reduced_sum_phases(p, x0, x1);
    for (std::size_t n = 0; n < full.size(); ++n) {
        if (full[n] != reduced[n % reduced.size()]) return false;
    }
    PhaseHistogram hf, hr;
    hf.add_all(full);
    hr.add_all(reduced);
    return hf.is_scaled_copy_of(hr, model.N() / static_cast<i64>(reduced.size()));
}

PropagatorResult osc_propagator(const FiniteModel& model, const OscParams& p, const Rational& x0, const Rational& x1,
                                PropagatorMethod method) {
    const OscGrid g = check_osc(model, p, x0, x1);
    const Amplitude reference = mehler_reference(p, x0.to_double(), x1.to_double());
    Amplitude value;
    switch (method) {
        case PropagatorMethod::Matrix: {
            const SplitCoefficients c = osc_coefficients(p);
            const FloatDiagonal a_op = op_expQ2(model, c.alpha);
            const ExactDiagonal b_op = op_expP2_exact(model, beta_b2_over_pi(p));
            StateVector s = basis_vector(model, Basis::U, g.k0);
            s = apply_diagonal(model, a_op, s);
            s = apply_diagonal(model, b_op, s);
            s = apply_diagonal(model, a_op, s);
            value = s.amps[static_cast<std::size_t>(g.k1)];
            break;
        }
        case PropagatorMethod::FullSum: {
            PhaseHistogram h;
            h.add_all(osc_full_sum_phases(model, p, x0, x1));
            value = alpha_prefactor(p, x0, x1) * h.weighted_sum(model.N());
            break;
        }
        case PropagatorMethod::ReducedSum: {
            PhaseHistogram h;
            h.add_all(osc_reduced_sum_phases(p, x0, x1));
            value = alpha_prefactor(p, x0, x1) * h.weighted_sum(g.a);
            break;
        }
        case PropagatorMethod::ClosedForm: {
            const Amplitude gauss = gauss_sum_reciprocity({-1, 2 * g.delta, g.a});
            value = alpha_prefactor(p, x0, x1) * gauss / static_cast<double>(g.a);
            break;
        }
    }
    return make_result(method, value, reference);
}

Amplitude mehler_reference(const OscParams& p, double x0, double x1) {
    const double s = std::sin(p.omega_t());
    if (std::abs(s) < kSingularTol) throw SingularityError("sin(omega t) = 0: propagator singular");
    const double c = std::cos(p.omega_t());
    const double mw = p.m() * p.omega();
    const Amplitude prefactor = std::sqrt(Amplitude(0.0, -mw / (2.0 * pi * p.hbar() * s)));
    const double exponent = mw * (c * (x0 * x0 + x1 * x1) - 2.0 * x0 * x1) / (2.0 * p.hbar() * s);
    return prefactor * std::polar(1.0, exponent);
}

}  // namespace fqm
