#include <string>

#include "fqm/embedding.hpp"
#include "fqm/errors.hpp"
#include "fqm/free_particle.hpp"
#include "fqm/oscillator.hpp"
#include "fqm/sweep.hpp"

namespace fqm {

namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw ValidationError(std::string("sweep spec: missing '") + key + "'");
    return obj.at(key);
}

Rational rational_of(const json& v, const char* key) {
    if (v.is_number_integer()) return Rational(v.get<i64>());
    if (v.is_number_float()) return Rational::parse(v.dump());
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    throw ValidationError(std::string("sweep spec: '") + key + "' must be a number or a rational string");
}

double real_of(const json& v, const char* key) {
    if (v.is_number()) return v.get<double>();
    throw ValidationError(std::string("sweep spec: '") + key + "' must be a number");
}

PropagatorMethod method_of(const json& params, PropagatorMethod fallback) {
    if (!params.contains("method")) return fallback;
    const auto m = parse_method(params.at("method").get<std::string>());
    if (!m) throw ValidationError("sweep spec: unknown method '" + params.at("method").get<std::string>() + "'");
    return *m;
}

std::function<Amplitude(i64)> free_quantity(const json& params) {
    FreeParams base;
    base.a = require(params, "a").get<i64>();
    base.x0 = rational_of(require(params, "x0"), "x0");
    base.x1 = rational_of(require(params, "x1"), "x1");
    if (params.contains("variant")) {
        const auto v = parse_variant(params.at("variant").get<std::string>());
        if (!v) throw ValidationError("sweep spec: unknown variant");
        base.variant = *v;
    }
    const PropagatorMethod method = method_of(params, PropagatorMethod::FullSum);
    return [base, method](i64 N) {
        FreeParams p = base;
        p.N = N;
        return free_propagator(make_free_model(p), p, method).value;
    };
}

std::function<Amplitude(i64)> osc_quantity(const json& params) {
    const OscParams p = params.contains("omega_t")
                            ? OscParams::from_scale(real_of(require(params, "a"), "a"),
                                                    real_of(params.at("omega_t"), "omega_t"))
                            : OscParams::make(real_of(require(params, "m"), "m"), real_of(require(params, "omega"), "omega"),
                                              real_of(require(params, "t"), "t"), real_of(require(params, "hbar"), "hbar"));
    const Rational x0 = rational_of(require(params, "x0"), "x0");
    const Rational x1 = rational_of(require(params, "x1"), "x1");
    const PropagatorMethod method = method_of(params, PropagatorMethod::FullSum);
    return [p, x0, x1, method](i64 N) { return osc_propagator(make_osc_model(p, N), p, x0, x1, method).value; };
}

std::function<Amplitude(i64)> norm_quantity(const json& params) {
    const Rational a = rational_of(require(params, "a"), "a");
    const std::string family = require(params, "family").get<std::string>();
    if (family == "polynomial") {
        const auto coeffs = require(params, "coeffs").get<std::vector<double>>();
        return [a, coeffs](i64 N) {
            return Amplitude(embedded_norm_sq(make_model(N, a, a), sample_polynomial(a, N, coeffs)), 0.0);
        };
    }
    if (family == "mode") {
        const i64 n = require(params, "n").get<i64>();
        return [a, n](i64 N) { return Amplitude(embedded_norm_sq(make_model(N, a, a), sample_mode(a, N, n)), 0.0); };
    }
    if (family == "gaussian") {
        const double center = real_of(require(params, "center"), "center");
        const double width = real_of(require(params, "width"), "width");
        return [a, center, width](i64 N) {
            return Amplitude(embedded_norm_sq(make_model(N, a, a), sample_gaussian(a, N, center, width)), 0.0);
        };
    }
    throw ValidationError("sweep spec: unknown function family '" + family + "'");
}

std::function<Amplitude(i64)> commutator_quantity(const json& params) {
    const Rational t_u = rational_of(require(params, "t_u"), "t_u");
    const Rational w_v = rational_of(require(params, "w_v"), "w_v");
    const bool starred = params.value("starred", false);
    return [t_u, w_v, starred](i64 N) {
        return phase_to_complex(commutator_phase(make_model(N, Rational(1), Rational(1)), t_u, w_v, starred));
    };
}

}  // namespace

SweepSpec sweep_spec_from_json(const json& j) {
    SweepSpec spec;
    spec.quantity_name = require(j, "quantity").get<std::string>();
    const json params = j.contains("params") ? j.at("params") : json::object();
    if (spec.quantity_name == "free_propagator") {
        spec.quantity = free_quantity(params);
    } else if (spec.quantity_name == "osc_propagator") {
        spec.quantity = osc_quantity(params);
    } else if (spec.quantity_name == "embedded_norm_sq") {
        spec.quantity = norm_quantity(params);
    } else if (spec.quantity_name == "commutator_phase") {
        spec.quantity = commutator_quantity(params);
    } else {
        throw ValidationError("sweep spec: unknown quantity '" + spec.quantity_name + "'");
    }
    spec.chain = require(j, "chain").get<std::vector<i64>>();
    spec.tolerance = j.value("tolerance", 1e-12);
    validate_chain(spec.chain);
    return spec;
}

}  // namespace fqm
