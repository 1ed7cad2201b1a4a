#include "fqm/embedding.hpp"

#include <cmath>
#include <string>

#include "fqm/errors.hpp"

namespace fqm {

namespace {

void require_positive(const Rational& a, i64 N) {
    if (!a.is_positive()) throw ValidationError("interval length a must be positive, got " + a.str());
    if (N <= 0) throw ValidationError("sample count N must be positive, got " + std::to_string(N));
}

void require_compatible(const FiniteModel& model, const SampledFunction& f) {
    if (f.N != model.N() || f.a != model.a() || static_cast<i64>(f.samples.size()) != f.N) {
        throw ValidationError("sampled function (N = " + std::to_string(f.N) + ", a = " + f.a.str() +
                              ") does not match the model (N = " + std::to_string(model.N()) +
                              ", a = " + model.a().str() + ")");
    }
}

double horner(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<double> square(const std::vector<double>& c) {
    if (c.empty()) return {};
    std::vector<double> out(2 * c.size() - 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j) out[i + j] += c[i] * c[j];
    return out;
}

}  // namespace

void check_mode_alias(i64 N, i64 n) {
    if (2 * (n < 0 ? -n : n) >= N) {
        throw ValidationError("Fourier mode n = " + std::to_string(n) + " aliases at N = " + std::to_string(N) +
                              " (need |n| < N/2)");
    }
}

SampledFunction sample_mode(const Rational& a, i64 N, i64 n) {
    require_positive(a, N);
    check_mode_alias(N, n);
    SampledFunction f{a, N, {}, FourierMode{n}};
    f.samples.reserve(static_cast<std::size_t>(N));
    const double scale = 1.0 / std::sqrt(a.to_double());
    for (i64 k = 0; k < N; ++k) {
        // 2 pi n (a k / N) / a = 2 pi n k / N
        const i128 num = mod_floor(static_cast<i128>(2) * n * k, 2 * static_cast<i128>(N));
        f.samples.push_back(scale * phase_to_complex(phase_normalize_wide(num, N)));
    }
    return f;
}

SampledFunction sample_polynomial(const Rational& a, i64 N, std::vector<double> coeffs) {
    require_positive(a, N);
    SampledFunction f{a, N, {}, Polynomial{coeffs}};
    f.samples.reserve(static_cast<std::size_t>(N));
    const double ad = a.to_double();
    for (i64 k = 0; k < N; ++k) f.samples.emplace_back(horner(coeffs, ad * static_cast<double>(k) / static_cast<double>(N)));
    return f;
}

SampledFunction sample_gaussian(const Rational& a, i64 N, double center, double width) {
    require_positive(a, N);
    if (!(width > 0.0)) throw ValidationError("gaussian width must be positive");
    SampledFunction f{a, N, {}, std::monostate{}};
    f.samples.reserve(static_cast<std::size_t>(N));
    const double ad = a.to_double();
    for (i64 k = 0; k < N; ++k) {
        const double x = ad * static_cast<double>(k) / static_cast<double>(N);
        f.samples.emplace_back(std::exp(-(x - center) * (x - center) / (2.0 * width * width)));
    }
    return f;
}

SampledFunction from_samples(const Rational& a, i64 N, std::vector<Amplitude> samples) {
    require_positive(a, N);
    if (static_cast<i64>(samples.size()) != N) {
        throw ValidationError("expected " + std::to_string(N) + " samples, got " + std::to_string(samples.size()));
    }
    return {a, N, std::move(samples), std::monostate{}};
}

StateVector embed(const FiniteModel& model, const SampledFunction& f) {
    require_compatible(model, f);
    const double scale = std::sqrt(model.a().to_double() / static_cast<double>(model.N()));
    StateVector s{Basis::U, {}};
    s.amps.reserve(f.samples.size());
    for (const auto& z : f.samples) s.amps.push_back(scale * z);
    return s;
}

ExactAmplitudes embed_mode_exact(const FiniteModel& model, i64 n) {
    check_mode_alias(model.N(), n);
    // (a/N)^{1/2} a^{-1/2} = N^{-1/2}
    ExactAmplitudes out{model.a() / Rational(model.N()) / model.a(), {}};
    out.phases.reserve(static_cast<std::size_t>(model.N()));
    for (i64 k = 0; k < model.N(); ++k) {
        out.phases.push_back(phase_normalize_wide(mod_floor(static_cast<i128>(2) * n * k, 2 * static_cast<i128>(model.N())),
                                                  model.N()));
    }
    return out;
}

double embedded_norm_sq(const FiniteModel& model, const SampledFunction& f) {
    require_compatible(model, f);
    if (const auto* mode = std::get_if<FourierMode>(&f.descriptor)) {
        const ExactAmplitudes img = embed_mode_exact(model, mode->n);
        return (img.modulus_sq * Rational(static_cast<i64>(img.phases.size()))).to_double();
    }
    double acc = 0.0;
    for (const auto& z : f.samples) acc += std::norm(z);
    return model.a().to_double() / static_cast<double>(model.N()) * acc;
}

double polynomial_norm_sq_integral(const Polynomial& f, double a) {
    const auto g = square(f.coeffs);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) acc += g[i] * std::pow(a, static_cast<double>(i + 1)) / static_cast<double>(i + 1);
    return acc;
}

double riemann_error_constant(const Polynomial& f, double a) {
    const auto g = square(f.coeffs);
    double bound = 0.0;  // max over [0, a] of |g'|, bounded termwise
    for (std::size_t i = 1; i < g.size(); ++i) {
        bound += std::abs(g[i]) * static_cast<double>(i) * std::pow(a, static_cast<double>(i - 1));
    }
    return a * a * bound / 2.0;
}

FloatDiagonal op_expQ2(const FiniteModel& model, double alpha) {
    FloatDiagonal d{Basis::U, {}};
    d.angle.reserve(static_cast<std::size_t>(model.N()));
    const double step = model.a().to_double() / static_cast<double>(model.N());
    for (i64 k = 0; k < model.N(); ++k) {
        const double x = step * static_cast<double>(k);
        d.angle.push_back(alpha * x * x);
    }
    return d;
}

ExactDiagonal op_expQ2_exact(const FiniteModel& model, const Rational& alpha_over_pi) {
    ExactDiagonal d{Basis::U, {}};
    d.phase_at.reserve(static_cast<std::size_t>(model.N()));
    const Rational step = model.a() / Rational(model.N());
    for (i64 k = 0; k < model.N(); ++k) {
        const Rational x = step * Rational(k);
        d.phase_at.push_back(phase_normalize(alpha_over_pi * x * x));
    }
    return d;
}

FloatDiagonal op_expP2(const FiniteModel& model, double alpha) {
    FloatDiagonal d{Basis::V, {}};
    d.angle.reserve(static_cast<std::size_t>(model.N()));
    const double b = model.b().to_double();
    for (i64 k = 0; k < model.N(); ++k) {
        const double p = b * static_cast<double>(k);
        d.angle.push_back(alpha * p * p);
    }
    return d;
}

ExactDiagonal op_expP2_exact(const FiniteModel& model, const Rational& alpha_b2_over_pi) {
    ExactDiagonal d{Basis::V, {}};
    d.phase_at.reserve(static_cast<std::size_t>(model.N()));
    const i128 den = alpha_b2_over_pi.den();
    const i128 num = mod_floor(alpha_b2_over_pi.num(), 2 * den);
    for (i64 k = 0; k < model.N(); ++k) {
        const i128 sq = mod_floor(static_cast<i128>(k) * k, 2 * den);
        d.phase_at.push_back(phase_normalize_wide(mod_floor(num * sq, 2 * den), den));
    }
    return d;
}

}  // namespace fqm
