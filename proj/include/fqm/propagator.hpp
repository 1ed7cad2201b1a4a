#pragma once

#include <optional>
#include <string_view>

#include "fqm/phase.hpp"

namespace fqm {

enum class PropagatorMethod { FullSum, ReducedSum, ClosedForm, Matrix };

const char* method_name(PropagatorMethod m);
std::optional<PropagatorMethod> parse_method(std::string_view name);

// Standard: time-independent Hamiltonian kernel exp(-i pi x^2 / a).
// Conjugate: the time-dependent-Hamiltonian kernel exp(+i pi x^2 / a).
enum class Variant { Standard, Conjugate };

const char* variant_name(Variant v);
std::optional<Variant> parse_variant(std::string_view name);

struct PropagatorResult {
    Amplitude value;
    PropagatorMethod method = PropagatorMethod::ClosedForm;
    Amplitude reference;
    double abs_dev = 0.0;
    double rel_dev = 0.0;
};

PropagatorResult make_result(PropagatorMethod method, Amplitude value, Amplitude reference);

// |x - y| / max(|x|, |y|), 0 when both vanish.
double relative_deviation(Amplitude x, Amplitude y);

}  // namespace fqm
