#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace fqm;
using namespace fqm::cli;

namespace {

enum Exit { kOk = 0, kValidation = 2, kSingularity = 3, kInvariant = 4 };

int emit_error(const std::string& command, const std::vector<std::string>& argv, const char* kind,
               const std::string& message, const Json& details, int code, bool meta) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["argv"] = argv;
    j["error"] = {{"kind", kind}, {"message", message}, {"details", details}};
    j["exit_code"] = code;
    if (meta) j["meta"] = meta_json();
    std::cout << j.dump(2) << '\n';
    std::cerr << "fqm: " << kind << ": " << message << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);

    CLI::App app{"Finite quantum mechanics toolkit: propagators, Gauss sums and Weyl checks on finite cyclic grids"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);
    bool no_meta = false;
    app.add_flag("--no-meta", no_meta, "omit the timestamp block so output is byte-for-byte reproducible")
        ->configurable(false);
    app.fallthrough();

    FreeOptions fo;
    auto* free = app.add_subcommand("free", "free-particle propagator <x1|exp(-iHt)|x0> in the finite model");
    free->add_option("--a", fo.a, "dimensionless time parameter a = h t / m (even integer)");
    free->add_option("--x0", fo.x0, "start position, rational (e.g. 1/2)");
    free->add_option("--x1", fo.x1, "end position, rational");
    free->add_option("--N", fo.N, "dimension of the finite model (default: minimal admissible)");
    free->add_option("--variant", fo.variant, "standard | conjugate");
    free->add_option("--method", fo.method, "full_sum | reduced_sum | closed_form | matrix | all");
    free->add_option("--particle", fo.particle, "particle preset for physical units (electron)");
    free->add_option("--mass", fo.mass, "particle mass in kg");
    free->add_option("--time", fo.time, "time in seconds");
    free->add_option("--h", fo.h, "Planck constant in J s");
    free->add_option("--unit", fo.unit, "length unit: m, cm, mm, um, nm or metres");

    OscOptions oo;
    auto* osc = app.add_subcommand("oscillator", "harmonic-oscillator propagator via the exp(aQ^2) exp(bP^2) exp(aQ^2) split");
    osc->add_option("--a", oo.a, "position scaling h sin(wt)/(m w); with --omega-t");
    osc->add_option("--omega-t", oo.omega_t, "phase angle wt, may use pi (e.g. pi/2)");
    osc->add_option("--m", oo.m, "mass");
    osc->add_option("--omega", oo.omega, "angular frequency");
    osc->add_option("--t", oo.t, "time, may use pi");
    osc->add_option("--hbar", oo.hbar, "reduced Planck constant");
    osc->add_option("--x0", oo.x0, "start position, rational");
    osc->add_option("--x1", oo.x1, "end position, rational");
    osc->add_option("--N", oo.N, "dimension of the finite model (default: minimal admissible)");
    osc->add_option("--method", oo.method, "matrix | full_sum | reduced_sum | closed_form | all");

    GaussOptions go;
    auto* gauss = app.add_subcommand("gauss", "generalized quadratic Gauss sum sum_{n<|g|} exp(i pi (c n^2 + d n)/g)");
    gauss->add_option("--c", go.c)->required();
    gauss->add_option("--d", go.d)->required();
    gauss->add_option("--g", go.g)->required();
    gauss->add_flag("--check", go.check, "also evaluate by reciprocity and report the deviation");

    SpaceSizeOptions so;
    auto* size = app.add_subcommand("space-size", "physical length of the position space a = h t / m");
    size->add_option("--particle", so.particle, "particle preset (electron)");
    size->add_option("--mass", so.mass, "mass in kg (overrides --particle)");
    size->add_option("--time", so.time, "time in seconds");
    size->add_option("--h", so.h, "Planck constant in J s");
    size->add_option("--unit", so.unit, "length unit: m, cm, mm, um, nm or metres");

    WeylOptions wo;
    auto* weyl = app.add_subcommand("weyl", "Weyl relation check on a periodic sampled grid");
    weyl->add_option("--a", wo.a, "period length, rational");
    weyl->add_option("--N", wo.N, "number of grid points")->required();
    weyl->add_option("--hbar", wo.hbar);
    weyl->add_option("--s", wo.s, "position-translation parameter, may use pi");
    weyl->add_option("--t", wo.t, "momentum-translation parameter, may use pi");
    weyl->add_option("--shift", wo.shift, "translation in grid steps instead of --t");
    weyl->add_flag("--points", wo.points, "list the ratio at every grid point");

    SweepOptions sw;
    auto* sweep = app.add_subcommand("sweep", "evaluate a quantity along a chain of dimensions N");
    sweep->add_option("spec", sw.spec, "JSON sweep specification")->required();
    sweep->add_flag("--csv", sw.csv, "emit CSV instead of JSON");
    sweep->add_option("--jobs", sw.jobs, "worker threads")->check(CLI::PositiveNumber);

    EmbedOptions eo;
    auto* embed = app.add_subcommand("embed", "embed sampled periodic functions into the finite model");
    embed->add_option("--family", eo.family, "mode | polynomial | gaussian | csv");
    embed->add_option("--a", eo.a, "period length, rational");
    embed->add_option("--N", eo.N, "number of samples");
    embed->add_option("--n", eo.n, "Fourier mode index (family mode)");
    embed->add_option("--coeffs", eo.coeffs, "polynomial coefficients c0,c1,... (family polynomial)");
    embed->add_option("--center", eo.center, "gaussian center");
    embed->add_option("--width", eo.width, "gaussian width");
    embed->add_option("--file", eo.file, "CSV file with index,re,im rows (family csv)");
    embed->add_flag("--amplitudes", eo.amplitudes, "include the embedded amplitudes");

    VerifyOptions vo;
    auto* verify = app.add_subcommand("verify", "randomized property checks over every module");
    verify->add_option("--seed", vo.seed);

    std::string command;
    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        const auto subs = app.get_subcommands();
        command = subs.empty() ? "" : subs.front()->get_name();
        return emit_error(command, args, "ValidationError", e.what(), Json::object(), kValidation, !no_meta);
    }

    auto* sub = app.get_subcommands().front();
    command = sub->get_name();
    Result r(command, args);
    try {
        bool ok = true;
        if (sub == free) {
            run_free(r, fo);
        } else if (sub == osc) {
            run_oscillator(r, oo);
        } else if (sub == gauss) {
            run_gauss(r, go);
        } else if (sub == size) {
            run_space_size(r, so);
        } else if (sub == weyl) {
            run_weyl(r, wo);
        } else if (sub == sweep) {
            if (auto csv = run_sweep_command(r, sw)) {
                std::cout << *csv;
                return kOk;
            }
        } else if (sub == embed) {
            run_embed(r, eo);
        } else if (sub == verify) {
            ok = run_verify(r, vo);
        }
        std::cout << r.render(!no_meta).dump(2) << '\n';
        if (!ok) {
            std::cerr << "fqm: verify: property failures, see the families report\n";
            return kInvariant;
        }
        return kOk;
    } catch (const DetailedValidationError& e) {
        return emit_error(command, args, "ValidationError", e.what(), e.details(), kValidation, !no_meta);
    } catch (const OverflowError& e) {
        return emit_error(command, args, "OverflowError", e.what(), Json::object(), kValidation, !no_meta);
    } catch (const ValidationError& e) {
        return emit_error(command, args, "ValidationError", e.what(), Json::object(), kValidation, !no_meta);
    } catch (const SingularityError& e) {
        return emit_error(command, args, "SingularityError", e.what(), Json::object(), kSingularity, !no_meta);
    } catch (const InvariantError& e) {
        return emit_error(command, args, "InvariantError", e.what(), Json::object(), kInvariant, !no_meta);
    } catch (const std::exception& e) {
        return emit_error(command, args, "InternalError", e.what(), Json::object(), kInvariant, !no_meta);
    }
}
