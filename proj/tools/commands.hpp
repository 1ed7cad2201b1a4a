#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cli_support.hpp"

namespace fqm::cli {

struct FreeOptions {
    std::optional<std::string> a;
    std::string x0 = "0";
    std::string x1 = "0";
    std::optional<std::int64_t> N;
    std::string variant = "standard";
    std::string method = "all";
    // physical-unit mode
    std::optional<std::string> particle;
    std::optional<double> mass;
    std::optional<double> time;
    double h = kPlanck;
    std::string unit = "cm";
};

struct OscOptions {
    std::optional<std::string> a;
    std::optional<std::string> omega_t;
    double m = 1.0;
    double omega = 1.0;
    std::optional<std::string> t;
    double hbar = 1.0;
    std::string x0 = "0";
    std::string x1 = "0";
    std::optional<std::int64_t> N;
    std::string method = "all";
};

struct GaussOptions {
    std::int64_t c = 0;
    std::int64_t d = 0;
    std::int64_t g = 0;
    bool check = false;
};

struct SpaceSizeOptions {
    std::string particle = "electron";
    std::optional<double> mass;
    double time = 1.0;
    double h = kPlanck;
    std::string unit = "cm";
};

struct WeylOptions {
    std::string a = "1";
    std::int64_t N = 0;
    double hbar = 1.0;
    std::string s = "1";
    std::optional<std::string> t;
    std::optional<std::int64_t> shift;
    bool points = false;
};

struct SweepOptions {
    std::string spec;
    bool csv = false;
    unsigned jobs = 1;
};

struct EmbedOptions {
    std::string family = "mode";
    std::string a = "1";
    std::optional<std::int64_t> N;
    std::int64_t n = 0;
    std::string coeffs = "0,1";
    double center = 0.5;
    double width = 0.1;
    std::optional<std::string> file;
    bool amplitudes = false;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
};

void run_free(Result& r, const FreeOptions& o);
void run_oscillator(Result& r, const OscOptions& o);
void run_gauss(Result& r, const GaussOptions& o);
void run_space_size(Result& r, const SpaceSizeOptions& o);
void run_weyl(Result& r, const WeylOptions& o);
// Returns the CSV text when o.csv is set, otherwise fills r.
std::optional<std::string> run_sweep_command(Result& r, const SweepOptions& o);
void run_embed(Result& r, const EmbedOptions& o);
// True iff every property family passed.
bool run_verify(Result& r, const VerifyOptions& o);

}  // namespace fqm::cli
