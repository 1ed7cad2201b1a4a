#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fqm/errors.hpp"
#include "fqm/phase.hpp"
#include "fqm/rational.hpp"

namespace fqm::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// A validation failure with machine-readable context for the error object.
class DetailedValidationError : public ValidationError {
public:
    DetailedValidationError(const std::string& what, Json details) : ValidationError(what), details_(std::move(details)) {}
    const Json& details() const { return details_; }

private:
    Json details_;
};

inline constexpr double kElectronMass = 9.1093837015e-31;  // kg
inline constexpr double kPlanck = 6.62607015e-34;          // J s

// Collects the inputs echo, the outputs and warnings of one command and
// renders them in a fixed field order.
class Result {
public:
    Result(std::string command, std::vector<std::string> argv);

    Json& inputs() { return inputs_; }
    Json& outputs() { return outputs_; }
    Json& deviations() { return deviations_; }
    void warn(std::string message) { warnings_.push_back(std::move(message)); }

    // Parses a flag value as an exact rational. Decimal spellings are
    // recorded in the snapping list.
    Rational rational(const std::string& flag, const std::string& text);

    // Parses a real number that may be written with pi: "pi/2", "3*pi/4",
    // "0.25pi", "1.5". The expression and its value are echoed.
    double angle(const std::string& flag, const std::string& text);

    Json render(bool meta) const;

private:
    std::string command_;
    std::vector<std::string> argv_;
    Json inputs_ = Json::object();
    Json snapping_ = Json::array();
    Json outputs_ = Json::object();
    Json deviations_ = Json::object();
    std::vector<std::string> warnings_;
};

double parse_angle(std::string_view text);

// Length unit in metres: cm, mm, m, um, nm, or a positive number.
double parse_length_unit(std::string_view text);

Json complex_json(Amplitude z);
Json phase_json(const RationalPhase& p);

Json meta_json();

}  // namespace fqm::cli
