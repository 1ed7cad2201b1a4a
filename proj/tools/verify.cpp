#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "fqm/embedding.hpp"
#include "fqm/finite_model.hpp"
#include "fqm/free_particle.hpp"
#include "fqm/gauss_sum.hpp"
#include "fqm/oscillator.hpp"
#include "fqm/sweep.hpp"
#include "fqm/weyl.hpp"

namespace fqm::cli {

namespace {

using Rng = std::mt19937_64;

i64 pick(Rng& rng, i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng); }

// representative of x mod a in [0, a)
Rational wrap(const Rational& x, i64 a) { return x - Rational((x / Rational(a)).floor() * a); }

struct Family {
    std::string name;
    int samples = 0;
    int failures = 0;
    std::string first_failure;

    void check(bool ok, const std::function<std::string()>& where) {
        ++samples;
        if (ok) return;
        if (failures++ == 0) first_failure = where();
    }
};

void phase_family(Family& f, Rng& rng) {
    for (int i = 0; i < 500; ++i) {
        const i64 n1 = pick(rng, -1000, 1000), d1 = pick(rng, 1, 300);
        const i64 n2 = pick(rng, -1000, 1000), d2 = pick(rng, 1, 300);
        const auto p = phase_normalize(n1, d1);
        const auto q = phase_normalize(n2, d2);
        const auto sum = p + q;
        const Amplitude expect = std::polar(1.0, std::numbers::pi * (static_cast<double>(n1) / d1 + static_cast<double>(n2) / d2));
        f.check(std::abs(phase_to_complex(sum) - expect) < 1e-12 && sum - q == p && sum.turns_of_pi() >= Rational(0) &&
                    sum.turns_of_pi() < Rational(2),
                [&] { return p.str() + " + " + q.str(); });
    }
}

void gauss_family(Family& f, Rng& rng) {
    int done = 0;
    while (done < 200) {
        GaussSumParams p{pick(rng, -30, 30), pick(rng, -30, 30), pick(rng, -60, 60)};
        if (!reciprocity_admissible(p)) continue;
        ++done;
        const Amplitude direct = gauss_sum_direct(p);
        const Amplitude recip = gauss_sum_reciprocity(p);
        f.check(std::abs(direct - recip) <= 1e-9 * std::max(1.0, std::abs(direct)), [&] {
            return "c=" + std::to_string(p.c) + " d=" + std::to_string(p.d) + " g=" + std::to_string(p.g);
        });
    }
}

void dft_family(Family& f, Rng& rng) {
    std::normal_distribution<double> gauss;
    for (int i = 0; i < 40; ++i) {
        const i64 n = pick(rng, 1, 300);
        std::vector<Amplitude> x(static_cast<std::size_t>(n));
        for (auto& z : x) z = {gauss(rng), gauss(rng)};
        double in_norm = 0.0;
        for (auto z : x) in_norm += std::norm(z);
        for (Basis to : {Basis::U, Basis::V}) {
            const auto slow = dft_definitional(x, to);
            const auto fast = dft_fast(x, to);
            double dev = 0.0, out_norm = 0.0;
            for (std::size_t k = 0; k < x.size(); ++k) {
                dev = std::max(dev, std::abs(slow[k] - fast[k]));
                out_norm += std::norm(slow[k]);
            }
            const Basis back = to == Basis::U ? Basis::V : Basis::U;
            const auto round = dft_definitional(slow, back);
            double rt = 0.0;
            for (std::size_t k = 0; k < x.size(); ++k) rt = std::max(rt, std::abs(round[k] - x[k]));
            f.check(dev < 1e-10 && std::abs(out_norm - in_norm) < 1e-9 * in_norm && rt < 1e-10,
                    [&] { return "N=" + std::to_string(n) + " to " + basis_name(to); });
        }
    }
}

void commutator_family(Family& f, Rng& rng) {
    for (int i = 0; i < 60; ++i) {
        const i64 n = pick(rng, 2, 40);
        const auto model = make_model(n, 1, 1);
        const i64 t = pick(rng, -2 * n, 2 * n);
        const i64 w = pick(rng, -2 * n, 2 * n);
        const i64 k = pick(rng, -2 * n, 2 * n);
        f.check(commutator_phase(model, t, w, false) == phase_normalize(2 * t * w, n) &&
                    commutator_phase(model, t, Rational(k, n), true) == phase_normalize(Rational(2 * t * k, n)),
                [&] { return "N=" + std::to_string(n) + " t=" + std::to_string(t) + " w=" + std::to_string(w); });
    }
}

void free_family(Family& f, Rng& rng) {
    for (int i = 0; i < 60; ++i) {
        FreeParams p;
        p.a = 2 * pick(rng, 1, 25);
        p.x0 = Rational(pick(rng, 0, 2 * p.a - 1), 2);
        p.x1 = wrap(p.x0 + Rational(pick(rng, -p.a, p.a)), p.a);
        p.N = minimal_admissible_N(p.a, p.x0, p.x1) * pick(rng, 1, 4);
        p.variant = pick(rng, 0, 1) == 0 ? Variant::Standard : Variant::Conjugate;
        const auto model = make_free_model(p);
        const Amplitude closed = free_propagator(model, p, PropagatorMethod::ClosedForm).value;
        const Amplitude full = free_propagator(model, p, PropagatorMethod::FullSum).value;
        const Amplitude reduced = free_propagator(model, p, PropagatorMethod::ReducedSum).value;
        FreeParams q = p;
        q.variant = p.variant == Variant::Standard ? Variant::Conjugate : Variant::Standard;
        const Amplitude other = free_propagator(model, q, PropagatorMethod::ClosedForm).value;
        const double mod = 1.0 / std::sqrt(static_cast<double>(p.a));
        f.check(relative_deviation(closed, full) < 1e-10 && relative_deviation(closed, reduced) < 1e-10 &&
                    std::abs(std::abs(closed) - mod) < 1e-12 && std::abs(other - std::conj(closed)) < 1e-12 &&
                    free_reduction_is_exact(model, p),
                [&] {
                    return "a=" + std::to_string(p.a) + " N=" + std::to_string(p.N) + " x0=" + p.x0.str() + " x1=" + p.x1.str();
                });
    }
}

void oscillator_family(Family& f, Rng& rng) {
    std::uniform_real_distribution<double> angle(0.05, std::numbers::pi - 0.05);
    for (int i = 0; i < 40; ++i) {
        const i64 a = 2 * pick(rng, 1, 8);
        const auto p = OscParams::from_scale(static_cast<double>(a), angle(rng));
        const i64 n = a * pick(rng, 1, 4);
        const auto model = make_osc_model(p, n);
        const Rational x0(pick(rng, 0, n - 1) * a, n);
        const Rational x1 = wrap(x0 + Rational(pick(rng, -a, a)), a);
        const Amplitude matrix = osc_propagator(model, p, x0, x1, PropagatorMethod::Matrix).value;
        const Amplitude closed = osc_propagator(model, p, x0, x1, PropagatorMethod::ClosedForm).value;
        const Amplitude mehler = mehler_reference(p, x0.to_double(), x1.to_double());
        f.check(relative_deviation(matrix, closed) < 1e-8 && std::abs(closed - mehler) < 1e-9, [&] {
            std::ostringstream s;
            s << "a=" << a << " wt=" << p.omega_t() << " N=" << n << " x0=" << x0 << " x1=" << x1;
            return s.str();
        });
    }
}

void embedding_family(Family& f, Rng& rng) {
    for (int i = 0; i < 40; ++i) {
        const i64 n = pick(rng, 2, 64);
        const auto model = make_model(n, 1, 1);
        const i64 mode = pick(rng, -(n - 1) / 2, n / 2 - (n % 2 == 0 ? 1 : 0));
        const auto sampled = sample_mode(Rational(1), n, mode);
        f.check(embed_mode_exact(model, mode) == v_vector_exact(model, ((mode % n) + n) % n) &&
                    std::abs(embedded_norm_sq(model, sampled) - 1.0) < 1e-12,
                [&] { return "N=" + std::to_string(n) + " mode=" + std::to_string(mode); });
    }
}

void weyl_family(Family& f, Rng& rng) {
    for (int i = 0; i < 40; ++i) {
        const WeylGrid grid{Rational(1), pick(rng, 2, 128), 1.0};
        const i64 steps = pick(rng, 0, 2 * grid.N);
        const double t = static_cast<double>(steps) / static_cast<double>(grid.N);
        const auto rep = weyl_violation_report(grid, 1.0, t);
        f.check(rep.shift_steps == steps && rep.wrapped_points == expected_wrapped_points(steps, grid.N), [&] {
            return "N=" + std::to_string(grid.N) + " steps=" + std::to_string(steps);
        });
    }
}

void sweep_family(Family& f, Rng& rng) {
    for (int i = 0; i < 5; ++i) {
        const i64 base = pick(rng, 1, 8);
        SweepSpec spec;
        spec.quantity_name = "free";
        spec.quantity = [](i64 n) {
            FreeParams p;
            p.a = 2;
            p.x1 = Rational(1);
            p.N = n;
            return free_propagator(make_free_model(p), p, PropagatorMethod::ClosedForm).value;
        };
        for (i64 n = 2 * base; n <= 2 * base * 64; n *= 2) spec.chain.push_back(n);
        const auto serial = run_sweep(spec, 1);
        const auto parallel = run_sweep(spec, 4);
        bool same = serial.entries.size() == parallel.entries.size();
        for (std::size_t k = 0; same && k < serial.entries.size(); ++k)
            same = serial.entries[k].value == parallel.entries[k].value;
        f.check(same && serial.stabilized && serial.stabilized_at == spec.chain.front(),
                [&] { return "chain from " + std::to_string(spec.chain.front()); });
    }
}

}  // namespace

bool run_verify(Result& r, const VerifyOptions& o) {
    r.inputs()["seed"] = o.seed;
    const std::vector<std::pair<std::string, void (*)(Family&, Rng&)>> families = {
        {"phase", phase_family},         {"gauss", gauss_family},         {"dft", dft_family},
        {"commutator", commutator_family}, {"free_particle", free_family}, {"oscillator", oscillator_family},
        {"embedding", embedding_family}, {"weyl", weyl_family},           {"sweep", sweep_family},
    };
    bool all = true;
    Json report = Json::array();
    for (std::size_t i = 0; i < families.size(); ++i) {
        Rng rng(o.seed + 0x9e3779b97f4a7c15ULL * (i + 1));
        Family fam{families[i].first};
        std::string error;
        try {
            families[i].second(fam, rng);
        } catch (const std::exception& e) {
            ++fam.failures;
            error = e.what();
        }
        const bool ok = fam.failures == 0;
        all = all && ok;
        Json entry = {{"family", fam.name}, {"passed", ok}, {"samples", fam.samples}, {"failures", fam.failures}};
        if (!fam.first_failure.empty()) entry["first_failure"] = fam.first_failure;
        if (!error.empty()) entry["exception"] = error;
        report.push_back(entry);
    }
    r.outputs()["families"] = report;
    r.outputs()["passed"] = all;
    return all;
}

}  // namespace fqm::cli
