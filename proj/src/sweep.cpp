#include "fqm/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <future>

#include "fqm/errors.hpp"

namespace fqm {

void validate_chain(const std::vector<i64>& chain) {
    if (chain.empty()) throw ValidationError("sweep chain is empty");
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (chain[i] <= 1) throw ValidationError("sweep chain entries must exceed 1, got " + std::to_string(chain[i]));
        if (i == 0) continue;
        if (chain[i] <= chain[i - 1]) throw ValidationError("sweep chain must be strictly increasing");
        if (chain[i] % chain[i - 1] != 0) {
            throw ValidationError("sweep chain must be a divisibility chain: " + std::to_string(chain[i - 1]) +
                                  " does not divide " + std::to_string(chain[i]));
        }
    }
}

namespace {

[[noreturn]] void rethrow_at(std::exception_ptr ep, i64 N) {
    const std::string prefix = "at N = " + std::to_string(N) + ": ";
    try {
        std::rethrow_exception(ep);
    } catch (const OverflowError& e) {
        throw OverflowError(prefix + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(prefix + e.what());
    } catch (const SingularityError& e) {
        throw SingularityError(prefix + e.what());
    } catch (const std::exception& e) {
        throw InvariantError(prefix + e.what());
    }
}

}  // namespace

SweepReport run_sweep(const SweepSpec& spec, unsigned jobs) {
    validate_chain(spec.chain);
    if (!spec.quantity) throw ValidationError("sweep has no quantity");
    if (!(spec.tolerance >= 0.0)) throw ValidationError("sweep tolerance must be non-negative");
    jobs = std::max(1u, jobs);

    const std::size_t n = spec.chain.size();
    std::vector<Amplitude> values(n);
    std::vector<std::exception_ptr> errors(n);
    auto evaluate = [&](std::size_t i) {
        try {
            values[i] = spec.quantity(spec.chain[i]);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    for (std::size_t start = 0; start < n; start += jobs) {
        const std::size_t stop = std::min(n, start + jobs);
        std::vector<std::future<void>> batch;
        for (std::size_t i = start + 1; i < stop; ++i) batch.push_back(std::async(std::launch::async, evaluate, i));
        evaluate(start);
        for (auto& f : batch) f.get();
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (errors[i]) rethrow_at(errors[i], spec.chain[i]);
    }

    SweepReport report;
    report.quantity_name = spec.quantity_name;
    for (std::size_t i = 0; i < n; ++i) {
        const double dev = i == 0 ? 0.0 : std::abs(values[i] - values[i - 1]);
        report.entries.push_back({spec.chain[i], values[i], dev});
    }
    if (n >= 2) {
        report.stabilized = report.entries.back().deviation < spec.tolerance;
        if (report.stabilized) {
            std::size_t first = n - 1;
            while (first > 0 && report.entries[first].deviation < spec.tolerance) --first;
            report.stabilized_at = report.entries[first].N;
        }
    }
    return report;
}

std::string sweep_csv(const SweepReport& report) {
    std::string out = "N,value_re,value_im,deviation\n";
    char line[160];
    for (const auto& e : report.entries) {
        std::snprintf(line, sizeof line, "%lld,%.17g,%.17g,%.17g\n", static_cast<long long>(e.N), e.value.real(),
                      e.value.imag(), e.deviation);
        out += line;
    }
    return out;
}

}  // namespace fqm
