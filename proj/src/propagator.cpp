#include "fqm/propagator.hpp"

#include <algorithm>
#include <cmath>

namespace fqm {

const char* method_name(PropagatorMethod m) {
    switch (m) {
        case PropagatorMethod::FullSum: return "full_sum";
        case PropagatorMethod::ReducedSum: return "reduced_sum";
        case PropagatorMethod::ClosedForm: return "closed_form";
        case PropagatorMethod::Matrix: return "matrix";
    }
    return "unknown";
}

std::optional<PropagatorMethod> parse_method(std::string_view name) {
    for (auto m : {PropagatorMethod::FullSum, PropagatorMethod::ReducedSum, PropagatorMethod::ClosedForm,
                   PropagatorMethod::Matrix}) {
        if (name == method_name(m)) return m;
    }
    return std::nullopt;
}

const char* variant_name(Variant v) { return v == Variant::Standard ? "standard" : "conjugate"; }

std::optional<Variant> parse_variant(std::string_view name) {
    if (name == "standard") return Variant::Standard;
    if (name == "conjugate") return Variant::Conjugate;
    return std::nullopt;
}

double relative_deviation(Amplitude x, Amplitude y) {
    const double scale = std::max(std::abs(x), std::abs(y));
    return scale == 0.0 ? 0.0 : std::abs(x - y) / scale;
}

PropagatorResult make_result(PropagatorMethod method, Amplitude value, Amplitude reference) {
    return {value, method, reference, std::abs(value - reference), relative_deviation(value, reference)};
}

}  // namespace fqm
