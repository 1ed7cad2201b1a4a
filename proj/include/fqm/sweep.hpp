#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fqm/phase.hpp"

namespace fqm {

/**
 * Evaluates a quantity along a divisibility chain N_0 | N_1 | ... and reports
 * whether it settled. This is an observed two-point criterion: "stabilized"
 * means the last two values differ by less than the tolerance, nothing more.
 */
struct SweepSpec {
    std::string quantity_name;
    std::function<Amplitude(i64 N)> quantity;
    std::vector<i64> chain;
    double tolerance = 1e-12;
};

struct SweepEntry {
    i64 N = 0;
    Amplitude value;
    double deviation = 0.0;  // |value - previous value|, 0 for the first entry
};

struct SweepReport {
    std::string quantity_name;
    std::vector<SweepEntry> entries;
    bool stabilized = false;
    std::optional<i64> stabilized_at;  // first N from which every later deviation is below tolerance
};

// Throws ValidationError for an empty, non-increasing or non-divisible chain.
void validate_chain(const std::vector<i64>& chain);

// Evaluates with up to `jobs` concurrent N. A failure at some N is rethrown
// with the same error kind and "at N = ..." prefixed.
SweepReport run_sweep(const SweepSpec& spec, unsigned jobs = 1);

// Header "N,value_re,value_im,deviation", one row per N.
std::string sweep_csv(const SweepReport& report);

// Builds a spec from {"quantity", "params", "chain", "tolerance"}. Known
// quantities: free_propagator, osc_propagator, embedded_norm_sq,
// commutator_phase.
SweepSpec sweep_spec_from_json(const nlohmann::json& j);

}  // namespace fqm
