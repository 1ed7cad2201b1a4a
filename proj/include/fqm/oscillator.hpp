#pragma once

#include <vector>

#include "fqm/finite_model.hpp"
#include "fqm/propagator.hpp"

namespace fqm {

/**
 * Harmonic oscillator H = P^2 / 2m + m omega^2 Q^2 / 2 evolved for time t.
 *
 * Derived quantities:
 *   gamma = t^2 omega^2
 *   alpha = -m omega tan(omega t / 2) / (2 hbar)   coefficient of Q^2
 *   beta  = -sin(omega t) / (2 omega m hbar)        coefficient of P^2
 *   a     = h sin(omega t) / (m omega)              position scaling
 * so that K^t = exp(i alpha Q^2) exp(i beta P^2) exp(i alpha Q^2).
 */
class OscParams {
public:
    // Throws ValidationError unless m, omega, hbar > 0 and t is finite,
    // SingularityError when sin(omega t) = 0 (this also covers the poles of
    // tan(omega t / 2)).
    static OscParams make(double m, double omega, double t, double hbar);

    // m = omega = 1, t = omega_t and hbar chosen so that the position scaling
    // equals `a`.
    static OscParams from_scale(double a, double omega_t);

    double m() const { return m_; }
    double omega() const { return omega_; }
    double t() const { return t_; }
    double hbar() const { return hbar_; }
    double h() const;
    double omega_t() const { return omega_ * t_; }
    double gamma() const { return omega_t() * omega_t(); }
    double scale_a() const;

private:
    OscParams(double m, double omega, double t, double hbar) : m_(m), omega_(omega), t_(t), hbar_(hbar) {}
    double m_, omega_, t_, hbar_;
};

struct SplitCoefficients {
    double alpha = 0.0;
    double beta = 0.0;
};

// Coefficients with exp(A + B) = exp(alpha A) exp(beta B) exp(alpha A) for
// [A,B] = C, [A,C] = 2 gamma A, [B,C] = -2 gamma B:
//   alpha = tan(sqrt(gamma)/2) / sqrt(gamma),  beta = sin(sqrt(gamma)) / sqrt(gamma).
// gamma = 0 gives the Strang limit (1/2, 1). Throws SingularityError at the
// poles of tan and where sin(sqrt(gamma)) vanishes.
SplitCoefficients factor_coefficients_generic(double gamma);

// alpha, beta of the oscillator splitting (see OscParams).
SplitCoefficients osc_coefficients(const OscParams& p);

// Frobenius norm of exp(A + B) - exp(alpha A) exp(beta B) exp(alpha A) for
// A = lambda E, B = -(gamma / lambda) F in the dim-dimensional irreducible
// representation of sl(2), where the commutator relations hold exactly.
double factorization_residual(double gamma, int dim, std::complex<double> lambda);

// Even positive integer equal to p.scale_a() within 1e-9 relative.
// Throws ValidationError otherwise.
i64 admissible_scale(const OscParams& p);

// Model of dimension N with a = admissible_scale(p) and b = 1, i.e. momenta
// measured in units of h/a (the physical h is not rational in general).
FiniteModel make_osc_model(const OscParams& p, i64 N);

// beta (h/a)^2: the P^2 coefficient on make_osc_model's momentum scale, for
// use with op_expP2. Equals -pi/a up to rounding.
double model_beta(const OscParams& p);

// beta b^2 / pi, which under the oscillator scaling equals -1/a exactly.
// Throws InvariantError if the floating-point value disagrees.
Rational beta_b2_over_pi(const OscParams& p);

std::vector<RationalPhase> osc_full_sum_phases(const FiniteModel& model, const OscParams& p, const Rational& x0,
                                               const Rational& x1);
std::vector<RationalPhase> osc_reduced_sum_phases(const OscParams& p, const Rational& x0, const Rational& x1);
bool osc_reduction_is_exact(const FiniteModel& model, const OscParams& p, const Rational& x0, const Rational& x1);

// <x1| A B A |x0> by the requested route; reference is the Mehler kernel.
PropagatorResult osc_propagator(const FiniteModel& model, const OscParams& p, const Rational& x0, const Rational& x1,
                                PropagatorMethod method);

// sqrt(m omega / (2 pi i hbar sin wt)) exp(i m omega (cos wt (x0^2 + x1^2) - 2 x0 x1) / (2 hbar sin wt))
Amplitude mehler_reference(const OscParams& p, double x0, double x1);

}  // namespace fqm
