#include <gtest/gtest.h>

#include <random>
#include <string>

#include "fqm/errors.hpp"
#include "fqm/free_particle.hpp"
#include "oracle.hpp"

using namespace fqm;

namespace {

FreeParams params(i64 a, Rational x0, Rational x1, i64 n, Variant v = Variant::Standard) {
    FreeParams p;
    p.a = a;
    p.x0 = x0;
    p.x1 = x1;
    p.N = n;
    p.variant = v;
    return p;
}

Amplitude run(const FreeParams& p, PropagatorMethod m) { return free_propagator(make_free_model(p), p, m).value; }

std::string validation_message(const FreeParams& p) {
    try {
        validate(p);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return {};
}

constexpr PropagatorMethod kAll[] = {PropagatorMethod::FullSum, PropagatorMethod::ReducedSum,
                                     PropagatorMethod::ClosedForm, PropagatorMethod::Matrix};

}  // namespace

TEST(FreeKernel, Examples) {
    const auto p = params(2, 0, 0, 4);
    const auto k = free_kernel(make_free_model(p), p);
    EXPECT_EQ(k.basis, Basis::V);
    EXPECT_EQ(k.phase_at[1], phase_normalize(3, 2));
    EXPECT_TRUE(k.phase_at[2].is_zero());
    EXPECT_TRUE(k.phase_at[0].is_zero());
    const auto pc = params(2, 0, 0, 4, Variant::Conjugate);
    EXPECT_EQ(free_kernel(make_free_model(pc), pc).phase_at[1], phase_normalize(1, 2));
}

TEST(FreePropagator, FrozenValues) {
    // values from an independent dense-matrix computation
    struct Case {
        i64 a;
        Rational x0, x1;
        i64 n;
        Variant v;
        Amplitude want;
    };
    const Case cases[] = {
        {2, 0, 0, 4, Variant::Standard, {0.5, -0.5}},
        {2, 0, 1, 4, Variant::Standard, {0.5, 0.5}},
        {2, 0, 1, 4, Variant::Conjugate, {0.5, -0.5}},
        {4, Rational(1, 2), Rational(5, 2), 16, Variant::Standard, {-0.35355339059327, 0.35355339059327}},
        {6, 1, 4, 12, Variant::Standard, {-0.28867513459481, -0.28867513459481}},
    };
    for (const auto& c : cases) {
        const auto p = params(c.a, c.x0, c.x1, c.n, c.v);
        for (auto m : kAll) EXPECT_LE(std::abs(run(p, m) - c.want), 1e-12) << method_name(m) << " a=" << c.a;
    }
}

TEST(FreePropagator, MatchesDenseOracle) {
    for (i64 a : {2, 4, 6}) {
        for (i64 mult : {1, 2, 3}) {
            const i64 n = a * mult * 2;
            for (i64 k0 = 0; k0 < n; k0 += 2) {
                for (i64 delta = 0; delta < a; ++delta) {
                    const Rational x0(k0 * a, n);
                    Rational x1 = x0 + Rational(delta);
                    if (x1 >= Rational(a)) x1 = x1 - Rational(a);
                    for (Variant v : {Variant::Standard, Variant::Conjugate}) {
                        const auto p = params(a, x0, x1, n, v);
                        const auto want = oracle::free_propagator(static_cast<int>(a), static_cast<int>(n), x0.to_double(),
                                                                  x1.to_double(), v == Variant::Conjugate);
                        ASSERT_LE(std::abs(run(p, PropagatorMethod::FullSum) - want), 1e-12);
                        ASSERT_LE(std::abs(run(p, PropagatorMethod::ClosedForm) - want), 1e-12);
                    }
                }
            }
        }
    }
}

TEST(FreePropagator, ReductionIsExactAndMethodsAgree) {
    for (i64 a = 2; a <= 50; a += 2) {
        for (i64 delta = 0; delta < a; ++delta) {
            for (i64 n : {a, 4 * a, 64 * a}) {
                const auto p = params(a, 0, delta, n);
                const auto model = make_free_model(p);
                ASSERT_TRUE(free_reduction_is_exact(model, p));
                const Amplitude full = free_propagator(model, p, PropagatorMethod::FullSum).value;
                const Amplitude reduced = free_propagator(model, p, PropagatorMethod::ReducedSum).value;
                const Amplitude closed = free_propagator(model, p, PropagatorMethod::ClosedForm).value;
                ASSERT_EQ(full, reduced);
                ASSERT_LE(relative_deviation(full, closed), 1e-9) << a << " " << delta << " " << n;
                ASSERT_NEAR(std::abs(closed), 1.0 / std::sqrt(static_cast<double>(a)), 1e-10);
            }
        }
    }
}

TEST(FreePropagator, VariantsAreConjugate) {
    for (i64 a : {2, 8, 14}) {
        for (i64 delta = 0; delta < a; ++delta) {
            const auto s = run(params(a, 0, delta, 2 * a), PropagatorMethod::ClosedForm);
            const auto c = run(params(a, 0, delta, 2 * a, Variant::Conjugate), PropagatorMethod::ClosedForm);
            EXPECT_LE(std::abs(c - std::conj(s)), 1e-12);
        }
    }
}

TEST(FreePropagator, TranslationCovariance) {
    const i64 a = 6;
    const i64 n = 24;
    for (i64 delta = 0; delta < a; ++delta) {
        const Amplitude base = run(params(a, 0, delta, n), PropagatorMethod::FullSum);
        for (i64 k0 = 0; k0 < n; ++k0) {
            const Rational x0(k0 * a, n);
            Rational x1 = x0 + Rational(delta);
            if (x1 >= Rational(a)) x1 = x1 - Rational(a);
            EXPECT_EQ(run(params(a, x0, x1, n), PropagatorMethod::FullSum), base);
        }
    }
}

TEST(FreePropagator, ResultCarriesReference) {
    const auto p = params(4, 0, 1, 8);
    const auto r = free_propagator(make_free_model(p), p, PropagatorMethod::FullSum);
    EXPECT_EQ(r.method, PropagatorMethod::FullSum);
    EXPECT_LE(r.abs_dev, 1e-12);
    EXPECT_NEAR(r.abs_dev, std::abs(r.value - r.reference), 1e-15);
}

TEST(FreeValidation, NamesTheFailedCondition) {
    EXPECT_NE(validation_message(params(3, 0, 1, 6)).find("a must be even"), std::string::npos);
    EXPECT_NE(validation_message(params(2, 0, Rational(1, 2), 8)).find("x1 - x0 must be an integer"), std::string::npos);
    EXPECT_NE(validation_message(params(4, 0, 1, 6)).find("a must divide N"), std::string::npos);
    const auto off_grid = validation_message(params(4, Rational(1, 2), Rational(3, 2), 4));
    EXPECT_NE(off_grid.find("N*x0/a must be an integer"), std::string::npos);
    EXPECT_NE(off_grid.find("minimal admissible N = 8"), std::string::npos);
    EXPECT_NE(validation_message(params(4, 0, 4, 8)).find("[0, a)"), std::string::npos);
    EXPECT_THROW(validate(params(0, 0, 0, 4)), SingularityError);
}

TEST(FreeValidation, MinimalAdmissibleN) {
    EXPECT_EQ(minimal_admissible_N(2, 0, 1), 2);
    EXPECT_EQ(minimal_admissible_N(4, Rational(1, 2), Rational(3, 2)), 8);
    EXPECT_EQ(minimal_admissible_N(6, Rational(1, 3), Rational(4, 3)), 18);
    EXPECT_EQ(minimal_admissible_N(6, Rational(1, 4), Rational(7, 6)), 72);
}

TEST(PhysicsReference, Examples) {
    // a = h t / m = 2 with m = 1, t = 2, h = 1
    const double hbar = 1.0 / (2.0 * oracle::pi);
    EXPECT_LE(std::abs(physics_reference(1, 2, hbar, 0, 0, Variant::Standard) - Amplitude(0.5, -0.5)), 1e-14);
    const auto s = physics_reference(1.3, 0.7, 0.2, 0.25, 1.5, Variant::Standard);
    const auto c = physics_reference(1.3, 0.7, 0.2, 0.25, 1.5, Variant::Conjugate);
    EXPECT_LE(std::abs(c - std::conj(s)), 1e-15);
    EXPECT_THROW(physics_reference(1, 0, hbar, 0, 0, Variant::Standard), SingularityError);
}

TEST(PhysicsReference, MatchesClosedFormOnScaledGrid) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> mass(0.1, 10.0);
    std::uniform_int_distribution<i64> half_a(1, 10);
    for (int i = 0; i < 50; ++i) {
        const double m = mass(rng);
        const i64 a = 2 * half_a(rng);
        const double h = 1.0;
        const double t = static_cast<double>(a) * m / h;  // so that h t / m = a
        const i64 delta = static_cast<i64>(rng() % static_cast<std::uint64_t>(a));
        const auto closed = run(params(a, 0, delta, a), PropagatorMethod::ClosedForm);
        const auto ref = physics_reference(m, t, h / (2.0 * oracle::pi), 0, static_cast<double>(delta), Variant::Standard);
        EXPECT_LE(std::abs(closed - ref), 1e-12) << "a=" << a << " delta=" << delta;
    }
}

TEST(SpaceSize, ReproducesQuotedLengths) {
    const double me = 9.1093837015e-31;
    const double h = 6.62607015e-34;
    const auto cm1 = space_size(me, 1.0, h, 0.01);
    EXPECT_NEAR(cm1.a, 7.27, 0.0727);
    EXPECT_NEAR(cm1.length, 0.0727, 0.000727);
    const auto cm3600 = space_size(me, 3600.0, h, 0.01);
    EXPECT_NEAR(cm3600.a, 26200, 262);
    EXPECT_NEAR(cm3600.length, 262, 2.62);
    const auto mm1 = space_size(me, 1.0, h, 0.001);
    EXPECT_NEAR(mm1.a, 727, 7.27);
    EXPECT_NEAR(mm1.length, 0.73, 0.0073);
    const auto zero = space_size(me, 0.0, h, 0.01);
    EXPECT_EQ(zero.a, 0.0);
    EXPECT_EQ(zero.length, 0.0);
    EXPECT_THROW(space_size(0.0, 1.0, h, 0.01), ValidationError);
    EXPECT_THROW(space_size(me, -1.0, h, 0.01), ValidationError);
}
