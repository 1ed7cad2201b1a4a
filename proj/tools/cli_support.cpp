#include "cli_support.hpp"

#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <numbers>

#include "fqm/errors.hpp"

namespace fqm::cli {

namespace {

bool looks_decimal(std::string_view text) {
    return text.find_first_of(".eE") != std::string_view::npos;
}

double parse_double(std::string_view text, std::string_view what) {
    std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ValidationError("cannot parse " + std::string(what) + " '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw ValidationError("cannot parse " + std::string(what) + " '" + s + "'");
    return v;
}

std::string trim(std::string_view text) {
    std::string out;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

}  // namespace

Result::Result(std::string command, std::vector<std::string> argv) : command_(std::move(command)), argv_(std::move(argv)) {}

Rational Result::rational(const std::string& flag, const std::string& text) {
    const Rational r = Rational::parse(text);
    inputs_[flag] = r.str();
    if (looks_decimal(text)) snapping_.push_back({{"flag", flag}, {"given", text}, {"exact", r.str()}});
    return r;
}

double Result::angle(const std::string& flag, const std::string& text) {
    const double v = parse_angle(text);
    if (text.find("pi") != std::string::npos) {
        inputs_[flag] = {{"expression", text}, {"value", v}};
    } else {
        inputs_[flag] = v;
    }
    return v;
}

Json Result::render(bool meta) const {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command_;
    j["argv"] = argv_;
    Json inputs = inputs_;
    if (!snapping_.empty()) inputs["snapped"] = snapping_;
    j["inputs"] = inputs;
    j["outputs"] = outputs_;
    j["deviations"] = deviations_;
    j["warnings"] = warnings_;
    if (meta) j["meta"] = meta_json();
    return j;
}

double parse_angle(std::string_view raw) {
    const std::string text = trim(raw);
    const auto at = text.find("pi");
    if (at == std::string::npos) return parse_double(text, "number");

    std::string coeff = text.substr(0, at);
    std::string rest = text.substr(at + 2);
    if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
    double c = 1.0;
    if (coeff == "-") {
        c = -1.0;
    } else if (!coeff.empty() && coeff != "+") {
        c = parse_double(coeff, "pi coefficient");
    }
    double d = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') throw ValidationError("cannot parse angle '" + std::string(raw) + "'");
        d = parse_double(rest.substr(1), "pi divisor");
        if (d == 0.0) throw ValidationError("division by zero in '" + std::string(raw) + "'");
    }
    return c * std::numbers::pi / d;
}

double parse_length_unit(std::string_view text) {
    if (text == "m") return 1.0;
    if (text == "cm") return 1e-2;
    if (text == "mm") return 1e-3;
    if (text == "um") return 1e-6;
    if (text == "nm") return 1e-9;
    const double v = parse_double(text, "length unit");
    if (!(v > 0.0)) throw ValidationError("length unit must be positive");
    return v;
}

Json complex_json(Amplitude z) {
    return {{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}, {"arg", std::arg(z)}};
}

Json phase_json(const RationalPhase& p) {
    return {{"over_pi", p.turns_of_pi().str()}, {"value", complex_json(phase_to_complex(p))}};
}

Json meta_json() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return {{"timestamp", buf}, {"tool", "fqm"}};
}

}  // namespace fqm::cli
