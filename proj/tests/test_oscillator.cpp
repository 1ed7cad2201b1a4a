#include <gtest/gtest.h>

#include <cmath>

#include "fqm/embedding.hpp"
#include "fqm/errors.hpp"
#include "fqm/free_particle.hpp"
#include "fqm/oscillator.hpp"
#include "oracle.hpp"

using namespace fqm;

namespace {

constexpr double pi = oracle::pi;

Amplitude run(const OscParams& p, i64 n, Rational x0, Rational x1, PropagatorMethod m) {
    return osc_propagator(make_osc_model(p, n), p, x0, x1, m).value;
}

}  // namespace

TEST(FactorCoefficients, Examples) {
    const auto zero = factor_coefficients_generic(0.0);
    EXPECT_DOUBLE_EQ(zero.alpha, 0.5);
    EXPECT_DOUBLE_EQ(zero.beta, 1.0);
    const auto tiny = factor_coefficients_generic(1e-12);
    EXPECT_NEAR(tiny.alpha, 0.5, 1e-12);
    EXPECT_NEAR(tiny.beta, 1.0, 1e-12);
    const auto quarter = factor_coefficients_generic((pi / 2) * (pi / 2));
    EXPECT_NEAR(quarter.alpha, 2 / pi, 1e-15);
    EXPECT_NEAR(quarter.beta, 2 / pi, 1e-15);
    EXPECT_THROW(factor_coefficients_generic(pi * pi), SingularityError);
    EXPECT_THROW(factor_coefficients_generic(9 * pi * pi), SingularityError);
    EXPECT_THROW(factor_coefficients_generic(-1.0), ValidationError);
}

TEST(FactorCoefficients, SeriesBranchIsContinuous) {
    for (double s : {5e-5, 9.9e-5, 1.01e-4, 2e-4}) {
        const auto c = factor_coefficients_generic(s * s);
        EXPECT_NEAR(c.alpha, std::tan(s / 2) / s, 1e-15);
        EXPECT_NEAR(c.beta, std::sin(s) / s, 1e-15);
    }
}

TEST(FactorizationIdentity, HoldsInSl2Representations) {
    for (int dim : {2, 3, 4, 6, 8}) {
        for (double gamma : {0.01, 0.25, 1.0, 2.0, 4.0}) {
            EXPECT_LE(factorization_residual(gamma, dim, {1.0, 0.0}), 1e-6) << dim << " " << gamma;
            EXPECT_LE(factorization_residual(gamma, dim, {0.0, 0.7}), 1e-6) << dim << " " << gamma;
        }
    }
}

TEST(OscCoefficients, Examples) {
    const auto c = osc_coefficients(OscParams::make(1, 1, pi / 2, 1));
    EXPECT_NEAR(c.alpha, -0.5, 1e-15);
    EXPECT_NEAR(c.beta, -0.5, 1e-15);

    const double t = 1e-4;
    const auto small = osc_coefficients(OscParams::make(1, 1, t, 1));
    EXPECT_NEAR(small.alpha, -t / 4, 1e-13);
    EXPECT_NEAR(small.beta, -t / 2, 1e-12);

    EXPECT_THROW(OscParams::make(1, 1, pi, 1), SingularityError);
    EXPECT_THROW(OscParams::make(1, 1, 0, 1), SingularityError);
    EXPECT_THROW(OscParams::make(-1, 1, 1, 1), ValidationError);
}

TEST(OscCoefficients, BetaOverAIdentity) {
    for (double wt : {pi / 6, pi / 4, pi / 2, 2.0}) {
        for (double m : {0.5, 1.0, 3.0}) {
            const auto p = OscParams::make(m, 1.7, wt / 1.7, 0.3);
            const auto c = osc_coefficients(p);
            EXPECT_NEAR(c.beta / p.scale_a(), -pi / (p.h() * p.h()), 1e-12 * pi / (p.h() * p.h()));
        }
    }
}

TEST(OscScale, FromScaleAndBetaB2) {
    const auto p = OscParams::from_scale(6, pi / 4);
    EXPECT_EQ(admissible_scale(p), 6);
    EXPECT_EQ(beta_b2_over_pi(p), Rational(-1, 6));
    EXPECT_THROW(admissible_scale(OscParams::make(1, 1, pi / 2, 1)), ValidationError);
    EXPECT_THROW(admissible_scale(OscParams::from_scale(3, pi / 4)), ValidationError);
}

TEST(OscPropagator, FrozenValues) {
    // dense-matrix oracle values
    const auto p2 = OscParams::from_scale(2, pi / 2);
    for (auto m : {PropagatorMethod::Matrix, PropagatorMethod::FullSum, PropagatorMethod::ReducedSum,
                   PropagatorMethod::ClosedForm})
        EXPECT_LE(std::abs(run(p2, 4, 0, 1, m) - Amplitude(0.5, -0.5)), 1e-12) << method_name(m);

    const auto p4 = OscParams::from_scale(4, pi / 4);
    const Amplitude want(0.41957045577574, -0.2719570419021);
    for (auto m : {PropagatorMethod::Matrix, PropagatorMethod::FullSum, PropagatorMethod::ReducedSum,
                   PropagatorMethod::ClosedForm})
        EXPECT_LE(std::abs(run(p4, 8, Rational(1, 2), Rational(3, 2), m) - want), 1e-12) << method_name(m);
}

TEST(OscPropagator, MatrixMatchesDenseOracle) {
    for (double wt : {pi / 6, pi / 3, 1.0}) {
        const auto p = OscParams::from_scale(4, wt);
        const auto c = osc_coefficients(p);
        const i64 n = 16;
        for (i64 k0 : {0, 3, 8}) {
            for (i64 d : {0, 1, 2, 3}) {
                const i64 k1 = (k0 + d * n / 4) % n;
                const auto want = oracle::aba_element(static_cast<int>(n), 4.0, c.alpha, c.beta, p.h() / 4.0,
                                                      static_cast<int>(k0), static_cast<int>(k1));
                const auto got = run(p, n, Rational(4 * k0, n), Rational(4 * k1, n), PropagatorMethod::Matrix);
                EXPECT_LE(std::abs(got - want), 1e-12);
            }
        }
    }
}

TEST(OscPropagator, MethodsAgreeAndMatchMehler) {
    for (double wt : {pi / 6, pi / 4, pi / 2, 1.0, 2.5}) {
        for (i64 a = 2; a <= 12; a += 2) {
            const auto p = OscParams::from_scale(static_cast<double>(a), wt);
            for (i64 n : {a, 4 * a}) {
                const auto model = make_osc_model(p, n);
                for (i64 k0 = 0; k0 < n; k0 += std::max<i64>(1, n / 4)) {
                    for (i64 d = 0; d < a; ++d) {
                        const Rational x0(k0 * a, n);
                        Rational x1 = x0 + Rational(d);
                        if (x1 >= Rational(a)) x1 = x1 - Rational(a);
                        ASSERT_TRUE(osc_reduction_is_exact(model, p, x0, x1));
                        const auto matrix = osc_propagator(model, p, x0, x1, PropagatorMethod::Matrix);
                        const auto full = osc_propagator(model, p, x0, x1, PropagatorMethod::FullSum);
                        const auto reduced = osc_propagator(model, p, x0, x1, PropagatorMethod::ReducedSum);
                        const auto closed = osc_propagator(model, p, x0, x1, PropagatorMethod::ClosedForm);
                        ASSERT_EQ(full.value, reduced.value);
                        ASSERT_LE(relative_deviation(matrix.value, reduced.value), 1e-8);
                        ASSERT_LE(relative_deviation(closed.value, reduced.value), 1e-8);
                        ASSERT_LE(std::abs(closed.value - mehler_reference(p, x0.to_double(), x1.to_double())), 1e-10)
                            << "wt=" << wt << " a=" << a << " x0=" << x0 << " x1=" << x1;
                    }
                }
            }
        }
    }
}

TEST(OscPropagator, ConsumesTheEmbeddingDiagonals) {
    const auto p = OscParams::from_scale(4, pi / 3);
    const auto model = make_osc_model(p, 12);
    const auto b_float = op_expP2(model, model_beta(p));
    const auto b_exact = op_expP2_exact(model, beta_b2_over_pi(p));
    for (i64 k = 0; k < 12; ++k) {
        EXPECT_LE(std::abs(std::polar(1.0, b_float.angle[k]) - phase_to_complex(b_exact.phase_at[k])), 1e-12);
    }
}

TEST(OscPropagator, UnitaryEvolution) {
    const auto p = OscParams::from_scale(6, pi / 5);
    const i64 n = 48;
    const auto model = make_osc_model(p, n);
    const auto c = osc_coefficients(p);
    StateVector s = basis_vector(model, Basis::U, 5);
    for (i64 k = 0; k < n; ++k) s.amps[k] += Amplitude(std::cos(0.3 * k), std::sin(0.11 * k * k));
    const double before = norm(s);
    const auto a_op = op_expQ2(model, c.alpha);
    const auto b_op = op_expP2_exact(model, beta_b2_over_pi(p));
    const auto out = apply_diagonal(model, a_op, apply_diagonal(model, b_op, apply_diagonal(model, a_op, s)));
    EXPECT_NEAR(norm(out), before, 1e-11 * std::sqrt(static_cast<double>(n)) * before);
}

TEST(Mehler, Examples) {
    const auto p = OscParams::make(1, 1, pi / 2, 1);
    const Amplitude origin = mehler_reference(p, 0, 0);
    EXPECT_LE(std::abs(origin - Amplitude(0.28209479177387814, -0.28209479177387814)), 1e-15);
    EXPECT_NEAR(std::abs(origin), 0.3989422804014327, 1e-15);
    // cos(wt) = 0: only the cross term survives
    const Amplitude cross = mehler_reference(p, 0.4, 1.1);
    EXPECT_LE(std::abs(cross / origin - std::polar(1.0, -0.4 * 1.1)), 1e-14);
    EXPECT_NEAR(std::abs(mehler_reference(p, 2.0, -3.0)), std::abs(origin), 1e-15);
    EXPECT_LE(std::abs(mehler_reference(p, 0.3, 0.9) - oracle::mehler(1, 1, pi / 2, 1, 0.3, 0.9)), 1e-14);
}

TEST(Mehler, FreeParticleLimit) {
    const double wt = 1e-3;
    const auto p = OscParams::from_scale(2, wt);
    for (i64 d : {0, 1}) {
        const Rational x0(1, 2);
        const Rational x1 = x0 + Rational(d);
        const auto osc = run(p, 8, x0, x1, PropagatorMethod::ClosedForm);
        FreeParams fp;
        fp.a = 2;
        fp.x0 = x0;
        fp.x1 = x1;
        fp.N = 8;
        const auto free = free_propagator(make_free_model(fp), fp, PropagatorMethod::ClosedForm).value;
        EXPECT_LE(std::abs(osc / free - 1.0), 1e-4);
        const auto cont = physics_reference(p.m(), p.t(), p.hbar(), x0.to_double(), x1.to_double(), Variant::Standard);
        EXPECT_LE(std::abs(osc / cont - 1.0), 1e-4);
    }
}
