#include "fqm/gauss_sum.hpp"

#include <cmath>
#include <string>

#include "fqm/errors.hpp"

namespace fqm {

namespace {

i128 abs128(i128 v) { return v < 0 ? -v : v; }

// Phase (a n^2 + b n) / m with the numerator reduced mod 2|m| first, so the
// products never grow beyond (2|m|)^2.
RationalPhase quadratic_phase(i64 a, i64 b, i64 m, i64 n) {
    const i128 mod = 2 * abs128(m);
    const i128 nn = mod_floor(n, mod);
    const i128 sq = mod_floor(nn * nn, mod);
    const i128 an = mod_floor(mod_floor(a, mod) * sq, mod);
    const i128 bn = mod_floor(mod_floor(b, mod) * nn, mod);
    return phase_normalize_wide(mod_floor(an + bn, mod), m);
}

}  // namespace

RationalPhase gauss_term_phase(const GaussSumParams& p, i64 n) {
    if (p.g == 0) throw ValidationError("gauss sum requires g != 0");
    return quadratic_phase(p.c, p.d, p.g, n);
}

Amplitude gauss_sum_direct(const GaussSumParams& p) {
    if (p.g == 0) throw ValidationError("gauss sum requires g != 0");
    const i64 terms = p.g < 0 ? -p.g : p.g;
    Amplitude acc{0.0, 0.0};
    for (i64 n = 0; n < terms; ++n) acc += phase_to_complex(quadratic_phase(p.c, p.d, p.g, n));
    return acc;
}

bool reciprocity_admissible(const GaussSumParams& p) {
    const i128 cg = static_cast<i128>(p.c) * p.g;
    return cg != 0 && mod_floor(cg - p.d, 2) == 0;
}

RationalPhase reciprocity_prefactor_phase(const GaussSumParams& p) {
    const i128 cg = static_cast<i128>(p.c) * p.g;
    const i128 d2 = static_cast<i128>(p.d) * p.d;
    return phase_normalize_wide(abs128(cg) - d2, 4 * cg);
}

Amplitude gauss_sum_reciprocity(const GaussSumParams& p) {
    const i128 cg = static_cast<i128>(p.c) * p.g;
    if (cg == 0) {
        throw ValidationError("reciprocity requires c*g != 0 (c=" + std::to_string(p.c) +
                              ", g=" + std::to_string(p.g) + ")");
    }
    if (mod_floor(cg - p.d, 2) != 0) {
        throw ValidationError("reciprocity requires c*g - d even (c=" + std::to_string(p.c) +
                              ", d=" + std::to_string(p.d) + ", g=" + std::to_string(p.g) + ")");
    }

    const i64 terms = p.c < 0 ? -p.c : p.c;
    Amplitude inner{0.0, 0.0};
    for (i64 n = 0; n < terms; ++n) {
        // exp(-pi i (g n^2 + d n) / c) = exp(pi i (g n^2 + d n) / (-c))
        inner += phase_to_complex(quadratic_phase(p.g, p.d, -p.c, n));
    }

    const double scale = std::sqrt(std::abs(static_cast<double>(p.g)) / std::abs(static_cast<double>(p.c)));
    return scale * phase_to_complex(reciprocity_prefactor_phase(p)) * inner;
}

}  // namespace fqm
