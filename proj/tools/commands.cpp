#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include "fqm/embedding.hpp"
#include "fqm/free_particle.hpp"
#include "fqm/gauss_sum.hpp"
#include "fqm/oscillator.hpp"
#include "fqm/sweep.hpp"
#include "fqm/weyl.hpp"

namespace fqm::cli {

namespace {

std::vector<PropagatorMethod> methods_from(const std::string& name, std::initializer_list<PropagatorMethod> all) {
    if (name == "all") return all;
    const auto m = parse_method(name);
    if (!m) throw ValidationError("unknown method '" + name + "' (expected full_sum, reduced_sum, closed_form, matrix or all)");
    return {*m};
}

// Fills outputs.methods and the cross-method deviations; returns the value
// to headline (closed form when it was computed).
Amplitude record_methods(Result& r, const std::vector<PropagatorResult>& results) {
    Json methods = Json::object();
    Json vs_reference = Json::object();
    Amplitude headline = results.front().value;
    for (const auto& res : results) {
        methods[method_name(res.method)] = complex_json(res.value);
        vs_reference[method_name(res.method)] = {{"abs", res.abs_dev}, {"rel", res.rel_dev}};
        if (res.method == PropagatorMethod::ClosedForm) headline = res.value;
    }
    r.outputs()["methods"] = methods;
    r.outputs()["reference"] = complex_json(results.front().reference);
    r.deviations()["vs_reference"] = vs_reference;

    double max_abs = 0.0;
    double max_rel = 0.0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        for (std::size_t j = i + 1; j < results.size(); ++j) {
            max_abs = std::max(max_abs, std::abs(results[i].value - results[j].value));
            max_rel = std::max(max_rel, relative_deviation(results[i].value, results[j].value));
        }
    }
    r.deviations()["max_cross_method_abs"] = max_abs;
    r.deviations()["max_cross_method_rel"] = max_rel;
    return headline;
}

i64 even_scale_or_throw(double a_real, const std::string& context, const Json& details) {
    const double nearest = std::round(a_real);
    const auto a = static_cast<i64>(nearest);
    if (a > 0 && a % 2 == 0 && std::abs(a_real - nearest) <= 1e-9 * std::abs(a_real)) return a;
    std::ostringstream msg;
    msg.precision(10);
    msg << context << " = " << a_real << " is not an even positive integer";
    throw DetailedValidationError(msg.str(), details);
}

i64 minimal_N_for(i64 a, const Rational& x0, const Rational& x1) {
    return minimal_admissible_N(a, x0, x1);
}

}  // namespace

void run_free(Result& r, const FreeOptions& o) {
    const bool physical = o.particle || o.mass;
    i64 a = 0;
    if (physical) {
        if (o.a) throw ValidationError("give either --a or the physical flags (--particle/--mass, --time), not both");
        if (!o.time) throw ValidationError("physical mode needs --time");
        double mass = 0.0;
        if (o.mass) {
            mass = *o.mass;
        } else if (*o.particle == "electron") {
            mass = kElectronMass;
        } else {
            throw ValidationError("unknown particle preset '" + *o.particle + "' (known: electron)");
        }
        const double unit = parse_length_unit(o.unit);
        const SpaceSize size = space_size(mass, *o.time, o.h, unit);
        r.inputs()["mode"] = "physical";
        r.inputs()["mass"] = mass;
        r.inputs()["time"] = *o.time;
        r.inputs()["h"] = o.h;
        r.inputs()["unit_m"] = unit;
        r.inputs()["a_computed"] = size.a;
        if (size.a == 0.0) throw SingularityError("t = 0: the space consists of a single point");
        const double even = std::max(2.0, 2.0 * std::round(size.a / 2.0));
        a = even_scale_or_throw(size.a, "a = h t / (m L^2)",
                                {{"a_computed", size.a},
                                 {"nearest_even_a", even},
                                 {"time_for_nearest_even_a", even * mass * unit * unit / o.h}});
        r.inputs()["a"] = a;
    } else {
        if (!o.a) throw ValidationError("missing --a (or physical flags --particle/--mass with --time)");
        r.inputs()["mode"] = "dimensionless";
        const Rational ar = r.rational("a", *o.a);
        if (ar.is_zero()) throw SingularityError("a = 0 (t = 0): the space consists of a single point");
        if (!ar.is_integer()) throw ValidationError("a must be even: got non-integer a = " + ar.str());
        a = ar.num();
    }

    FreeParams p;
    p.a = a;
    p.x0 = r.rational("x0", o.x0);
    p.x1 = r.rational("x1", o.x1);
    const auto variant = parse_variant(o.variant);
    if (!variant) throw ValidationError("unknown variant '" + o.variant + "' (expected standard or conjugate)");
    p.variant = *variant;
    r.inputs()["variant"] = variant_name(p.variant);

    if (a <= 0 || a % 2 != 0) {
        p.N = a > 0 ? a : 2;
        validate(p);  // reports the parity/sign failure by name
    }
    const i64 minimal = minimal_N_for(a, p.x0, p.x1);
    if (o.N) {
        p.N = *o.N;
    } else {
        p.N = minimal;
        r.warn("N not given; using the minimal admissible N = " + std::to_string(minimal));
    }
    r.inputs()["N"] = p.N;
    try {
        validate(p);
    } catch (const SingularityError&) {
        throw;
    } catch (const ValidationError& e) {
        throw DetailedValidationError(e.what(), {{"minimal_admissible_N", minimal}});
    }

    const auto model = make_free_model(p);
    std::vector<PropagatorResult> results;
    for (auto m : methods_from(o.method, {PropagatorMethod::FullSum, PropagatorMethod::ReducedSum,
                                           PropagatorMethod::ClosedForm, PropagatorMethod::Matrix}))
        results.push_back(free_propagator(model, p, m));
    r.inputs()["method"] = o.method;

    const Amplitude value = record_methods(r, results);
    r.outputs()["value"] = complex_json(value);
    r.outputs()["reduction_exact"] = free_reduction_is_exact(model, p);
    r.outputs()["expected_modulus"] = 1.0 / std::sqrt(static_cast<double>(a));

    FreeParams other = p;
    other.variant = p.variant == Variant::Standard ? Variant::Conjugate : Variant::Standard;
    const Amplitude other_value = free_propagator(model, other, PropagatorMethod::ClosedForm).value;
    r.outputs()["other_variant"] = {{"variant", variant_name(other.variant)}, {"closed_form", complex_json(other_value)}};
    r.deviations()["variant_conjugacy"] = std::abs(other_value - std::conj(value));
}

void run_oscillator(Result& r, const OscOptions& o) {
    const OscParams p = [&] {
        if (o.a) {
            if (o.t) throw ValidationError("give either --a with --omega-t, or --t (with --m, --omega, --hbar)");
            if (!o.omega_t) throw ValidationError("--a needs --omega-t");
            r.inputs()["mode"] = "scaled";
            const double a = Rational::parse(*o.a).to_double();
            r.inputs()["a"] = a;
            return OscParams::from_scale(a, r.angle("omega_t", *o.omega_t));
        }
        if (!o.t) throw ValidationError("missing --t (or --a with --omega-t)");
        r.inputs()["mode"] = "physical";
        r.inputs()["m"] = o.m;
        r.inputs()["omega"] = o.omega;
        r.inputs()["hbar"] = o.hbar;
        const double t = r.angle("t", *o.t);
        return OscParams::make(o.m, o.omega, t, o.hbar);
    }();
    const Rational x0 = r.rational("x0", o.x0);
    const Rational x1 = r.rational("x1", o.x1);

    const auto c = osc_coefficients(p);
    r.outputs()["omega_t"] = p.omega_t();
    r.outputs()["gamma"] = p.gamma();
    r.outputs()["alpha"] = c.alpha;
    r.outputs()["beta"] = c.beta;
    r.outputs()["scale_a"] = p.scale_a();
    const Amplitude mehler = mehler_reference(p, x0.to_double(), x1.to_double());
    r.outputs()["mehler"] = complex_json(mehler);

    i64 a = 0;
    try {
        a = admissible_scale(p);
    } catch (const ValidationError&) {
        r.warn("position scaling a = " + std::to_string(p.scale_a()) +
               " is not an even integer; finite-model methods skipped, value is the Mehler kernel");
        r.outputs()["value"] = complex_json(mehler);
        return;
    }
    r.outputs()["beta_b2_over_pi"] = beta_b2_over_pi(p).str();

    i64 n = 0;
    if (o.N) {
        n = *o.N;
    } else {
        n = minimal_N_for(a, x0, x1);
        r.warn("N not given; using the minimal admissible N = " + std::to_string(n));
    }
    r.inputs()["N"] = n;
    r.inputs()["method"] = o.method;

    const auto model = make_osc_model(p, n);
    std::vector<PropagatorResult> results;
    for (auto m : methods_from(o.method, {PropagatorMethod::Matrix, PropagatorMethod::FullSum, PropagatorMethod::ReducedSum,
                                           PropagatorMethod::ClosedForm}))
        results.push_back(osc_propagator(model, p, x0, x1, m));
    const Amplitude value = record_methods(r, results);
    r.outputs()["value"] = complex_json(value);
    r.outputs()["reduction_exact"] = osc_reduction_is_exact(model, p, x0, x1);
}

void run_gauss(Result& r, const GaussOptions& o) {
    const GaussSumParams p{o.c, o.d, o.g};
    r.inputs()["c"] = o.c;
    r.inputs()["d"] = o.d;
    r.inputs()["g"] = o.g;
    r.inputs()["check"] = o.check;
    const Amplitude direct = gauss_sum_direct(p);
    r.outputs()["value"] = complex_json(direct);
    r.outputs()["terms"] = std::abs(o.g);
    if (!o.check) return;
    if (!reciprocity_admissible(p)) {
        r.warn("reciprocity needs c*g - d even and c, g nonzero; check skipped");
        return;
    }
    const Amplitude recip = gauss_sum_reciprocity(p);
    r.outputs()["reciprocity"] = complex_json(recip);
    r.outputs()["prefactor_phase"] = phase_json(reciprocity_prefactor_phase(p));
    r.deviations()["direct_vs_reciprocity"] = std::abs(direct - recip);
}

void run_space_size(Result& r, const SpaceSizeOptions& o) {
    double mass = 0.0;
    if (o.mass) {
        mass = *o.mass;
        r.inputs()["mass"] = mass;
    } else if (o.particle == "electron") {
        mass = kElectronMass;
        r.inputs()["particle"] = o.particle;
        r.inputs()["mass"] = mass;
    } else {
        throw ValidationError("unknown particle preset '" + o.particle + "' (known: electron)");
    }
    const double unit = parse_length_unit(o.unit);
    r.inputs()["time"] = o.time;
    r.inputs()["h"] = o.h;
    r.inputs()["unit"] = o.unit;
    r.inputs()["unit_m"] = unit;
    const SpaceSize s = space_size(mass, o.time, o.h, unit);
    r.outputs()["a"] = s.a;
    r.outputs()["length_m"] = s.length;
    r.outputs()["length_in_unit"] = s.a;
    if (s.a == 0.0) r.warn("t = 0: the space consists of a single point");
}

void run_weyl(Result& r, const WeylOptions& o) {
    WeylGrid grid{r.rational("a", o.a), o.N, o.hbar};
    r.inputs()["N"] = o.N;
    r.inputs()["hbar"] = o.hbar;
    validate(grid);
    const double s = r.angle("s", o.s);
    double t = 0.0;
    if (o.shift) {
        if (o.t) throw ValidationError("give either --t or --shift, not both");
        t = static_cast<double>(*o.shift) * grid.a.to_double() / (grid.hbar * static_cast<double>(grid.N));
        r.inputs()["shift"] = *o.shift;
        r.inputs()["t"] = t;
    } else {
        if (!o.t) throw ValidationError("missing --t (or --shift in grid steps)");
        t = r.angle("t", *o.t);
    }

    const WeylReport rep = weyl_violation_report(grid, s, t);
    r.outputs()["shift_steps"] = rep.shift_steps;
    r.outputs()["wrapped_points"] = rep.wrapped_points;
    r.outputs()["fraction"] = rep.fraction;
    r.outputs()["expected_wrapped_points"] = expected_wrapped_points(rep.shift_steps, grid.N);
    r.outputs()["phase_mismatch_points"] = rep.phase_mismatch_points;
    r.outputs()["phase_mismatch_fraction"] = rep.phase_mismatch_fraction;
    r.outputs()["naive_phase"] = complex_json(std::polar(1.0, s * t * grid.hbar));

    if (!o.points) return;
    // any nonvanishing f gives the same ratios; use 1 + x/a
    std::vector<Amplitude> samples;
    for (i64 k = 0; k < grid.N; ++k) samples.emplace_back(1.0 + static_cast<double>(k) / static_cast<double>(grid.N), 0.0);
    const SampledFunction f = from_samples(grid.a, grid.N, samples);
    Json pts = Json::array();
    double worst = 0.0;
    for (i64 k = 0; k < grid.N; ++k) {
        const i64 m = wrap_count(grid, k, rep.shift_steps);
        const Amplitude ratio = weyl_commutator(grid, s, t, k, f);
        const Amplitude formula = std::polar(1.0, s * t * grid.hbar - s * grid.a.to_double() * static_cast<double>(m));
        worst = std::max(worst, std::abs(ratio - formula));
        pts.push_back({{"k", k}, {"m", m}, {"ratio", complex_json(ratio)}});
    }
    r.outputs()["points"] = pts;
    r.deviations()["ratio_vs_formula"] = worst;
}

std::optional<std::string> run_sweep_command(Result& r, const SweepOptions& o) {
    std::ifstream in(o.spec);
    if (!in) throw ValidationError("cannot open sweep spec '" + o.spec + "'");
    nlohmann::json spec_json;
    try {
        spec_json = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("sweep spec is not valid JSON: ") + e.what());
    }
    SweepSpec spec;
    try {
        spec = sweep_spec_from_json(spec_json);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed sweep spec: ") + e.what());
    }
    const SweepReport rep = run_sweep(spec, o.jobs);
    if (o.csv) return sweep_csv(rep);

    r.inputs()["spec"] = Json::parse(spec_json.dump());
    r.inputs()["jobs"] = o.jobs;
    Json entries = Json::array();
    for (const auto& e : rep.entries)
        entries.push_back({{"N", e.N}, {"value", complex_json(e.value)}, {"deviation", e.deviation}});
    r.outputs()["quantity"] = rep.quantity_name;
    r.outputs()["entries"] = entries;
    r.outputs()["stabilized"] = rep.stabilized;
    r.outputs()["stabilized_at"] = rep.stabilized_at ? Json(*rep.stabilized_at) : Json(nullptr);
    if (rep.entries.size() < 2) r.warn("a single-entry chain cannot show stabilization");
    return std::nullopt;
}

namespace {

std::vector<double> parse_coeffs(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_angle(item));
    if (out.empty()) throw ValidationError("--coeffs needs at least one coefficient");
    return out;
}

std::vector<Amplitude> read_samples_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open samples file '" + path + "'");
    std::vector<std::pair<i64, Amplitude>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string idx, re, im;
        if (!std::getline(ss, idx, ',') || !std::getline(ss, re, ',')) {
            throw ValidationError("samples file line " + std::to_string(lineno) + ": expected index,re[,im]");
        }
        std::getline(ss, im, ',');
        if (lineno == 1 && idx == "index") continue;
        try {
            rows.emplace_back(std::stoll(idx), Amplitude(std::stod(re), im.empty() ? 0.0 : std::stod(im)));
        } catch (const std::exception&) {
            throw ValidationError("samples file line " + std::to_string(lineno) + ": cannot parse '" + line + "'");
        }
    }
    std::vector<Amplitude> out(rows.size());
    std::vector<bool> seen(rows.size(), false);
    for (const auto& [k, v] : rows) {
        if (k < 0 || static_cast<std::size_t>(k) >= rows.size() || seen[static_cast<std::size_t>(k)]) {
            throw ValidationError("samples file indices must be 0..N-1, each once");
        }
        seen[static_cast<std::size_t>(k)] = true;
        out[static_cast<std::size_t>(k)] = v;
    }
    return out;
}

}  // namespace

void run_embed(Result& r, const EmbedOptions& o) {
    const Rational a = r.rational("a", o.a);
    r.inputs()["family"] = o.family;
    SampledFunction f;
    if (o.family == "csv") {
        if (!o.file) throw ValidationError("family csv needs --file");
        r.inputs()["file"] = *o.file;
        auto samples = read_samples_csv(*o.file);
        const auto n = static_cast<i64>(samples.size());
        if (o.N && *o.N != n) throw ValidationError("--N disagrees with the number of samples in the file");
        f = from_samples(a, n, std::move(samples));
    } else {
        if (!o.N) throw ValidationError("missing --N");
        if (o.family == "mode") {
            r.inputs()["n"] = o.n;
            f = sample_mode(a, *o.N, o.n);
        } else if (o.family == "polynomial") {
            const auto coeffs = parse_coeffs(o.coeffs);
            r.inputs()["coeffs"] = coeffs;
            f = sample_polynomial(a, *o.N, coeffs);
        } else if (o.family == "gaussian") {
            r.inputs()["center"] = o.center;
            r.inputs()["width"] = o.width;
            f = sample_gaussian(a, *o.N, o.center, o.width);
        } else {
            throw ValidationError("unknown family '" + o.family + "' (expected mode, polynomial, gaussian or csv)");
        }
    }
    r.inputs()["N"] = f.N;

    const auto model = make_model(f.N, a, a);
    const double norm_sq = embedded_norm_sq(model, f);
    r.outputs()["norm_sq"] = norm_sq;
    if (const auto* mode = std::get_if<FourierMode>(&f.descriptor)) {
        const i64 v_index = ((mode->n % f.N) + f.N) % f.N;
        r.outputs()["v_index"] = v_index;
        r.outputs()["equals_v_exactly"] = embed_mode_exact(model, mode->n) == v_vector_exact(model, v_index);
    }
    if (const auto* poly = std::get_if<Polynomial>(&f.descriptor)) {
        const double integral = polynomial_norm_sq_integral(*poly, a.to_double());
        const double bound = riemann_error_constant(*poly, a.to_double()) / static_cast<double>(f.N);
        r.outputs()["integral"] = integral;
        r.outputs()["riemann_bound"] = bound;
        r.deviations()["norm_vs_integral"] = std::abs(norm_sq - integral);
    }
    if (o.amplitudes) {
        Json amps = Json::array();
        for (const auto& c : embed(model, f).amps) amps.push_back({c.real(), c.imag()});
        r.outputs()["amplitudes"] = amps;
    }
}

}  // namespace fqm::cli
