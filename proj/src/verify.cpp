// Copyright 2026 The nclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nclab/verify.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>

#include "nclab/conservation.hpp"
#include "nclab/linalg.hpp"
#include "nclab/machines.hpp"
#include "nclab/nosignal.hpp"
#include "nclab/report.hpp"
#include "nclab/runner.hpp"
#include "nclab/states.hpp"

namespace nclab {

namespace {

constexpr double kPi = std::numbers::pi;

double max_entry(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

MachineSpec unitary_spec(const Signature& sig, const Matrix& u) {
    std::vector<MachineRule> rules;
    for (std::size_t k = 0; k < sig.total_dim(); ++k) {
        const Ket e = Ket::basis(sig, k);
        rules.push_back({e, Ket(sig, u * e.amplitudes())});
    }
    return MachineSpec(sig, sig, std::move(rules), MachineMode::LinearExtension);
}

TwoSingletScenario random_scenario(Rng& rng, std::size_t ancilla_dim = 4) {
    return build_scenario({random_basis(rng), random_basis(rng)}, {random_basis(rng), random_basis(rng)},
                          ancilla_dim);
}

double partial_trace_composition(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const DensityMatrix rho = density_of(random_ket(Signature{{"A", 2}, {"B", 3}, {"C", 2}}, rng));
        const Matrix once = partial_trace(rho, {"A"}).matrix();
        const Matrix twice = partial_trace(partial_trace(rho, {"A", "B"}), {"A"}).matrix();
        worst = std::max(worst, max_abs_diff(once, twice));
        worst = std::max(worst, std::abs(partial_trace(rho, {"C", "B"}).matrix().trace() - Complex(1.0)));
    }
    return worst;
}

double local_isometry_norm(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const Ket s = random_ket(Signature{{"A", 2}, {"B", 3}}, rng);
        const Ket out = apply_local(random_isometry(5, 3, rng), Signature{{"B2", 5}}, s, {"B"});
        worst = std::max(worst, std::abs(out.norm() - 1.0));
    }
    return worst;
}

double eigen_reconstruction(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const Matrix h = random_hermitian(16, rng);
        worst = std::max(worst, reconstruction_residual(h, eig_hermitian(h)));
    }
    return worst;
}

double eigenvector_orthonormality(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const Spectrum s = eig_hermitian(random_hermitian(16, rng));
        worst = std::max(worst, max_entry(s.vectors.adjoint() * s.vectors - Matrix::Identity(16, 16)));
    }
    return worst;
}

double trace_distance_symmetry(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const Signature s{{"q", 4}};
        const DensityMatrix r1 = density_of(random_ket(s, rng));
        const DensityMatrix r2 = mixture_of({random_ket(s, rng), random_ket(s, rng)});
        worst = std::max(worst, std::abs(trace_distance(r1, r2) - trace_distance(r2, r1)));
    }
    return worst;
}

double singlet_invariance(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const Ket s1 = singlet(random_basis(rng), "A", "B");
        const Ket s2 = singlet(random_basis(rng), "A", "B");
        worst = std::max(worst, std::abs(std::abs(inner(s1, s2)) - 1.0));
    }
    return worst;
}

double overlap_construction(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const Complex target = std::polar(uniform(rng, 0, 1), uniform(rng, 0, 2 * kPi));
        const auto [x, y] = kets_with_overlap(target, 3, "q");
        worst = std::max(worst, std::abs(inner(x, y) - target));
        worst = std::max({worst, std::abs(x.norm() - 1.0), std::abs(y.norm() - 1.0)});
    }
    return worst;
}

MachineSpec strong_cloner(double a, double b, double c) {
    return preset_strong_cloner(kets_with_overlap(a, 2, "psi"), kets_with_overlap(b, 2, "alpha"),
                                kets_with_overlap(c, 8, "env"), 4);
}

double isometry_extension(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const double a = uniform(rng, 0, 1);
        const double c = uniform(rng, 0, 1);
        const MachineSpec m = strong_cloner(a, a * c, c);
        const LinearMachine lm = extend_to_isometry(m);
        worst = std::max(worst, lm.isometry_residual());
        for (const auto& r : m.rules()) {
            worst = std::max(worst, max_entry(lm.matrix() * r.input.amplitudes() - r.output.amplitudes()));
        }
    }
    return worst;
}

double strong_cloner_condition(Rng& rng) {
    int disagreements = 0;
    for (int t = 0; t < 200; ++t) {
        const double a = uniform(rng, 0.05, 1);
        const double c = uniform(rng, 0, 1);
        const double b = t % 2 == 0 ? a * c : uniform(rng, 0, 1);
        if (check_consistency(strong_cloner(a, b, c)).consistent != (std::abs(b - a * c) < kAssertTolerance)) {
            ++disagreements;
        }
    }
    return disagreements;
}

double strong_cloner_deviation(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const double a = uniform(rng, 0, 1), b = uniform(rng, 0, 1), c = uniform(rng, 0, 1);
        worst = std::max(worst, std::abs(check_consistency(strong_cloner(a, b, c)).max_deviation - a * std::abs(b - a * c)));
    }
    return worst;
}

double deleter_condition(Rng& rng) {
    int disagreements = 0;
    for (int t = 0; t < 200; ++t) {
        const double a = uniform(rng, 0.05, 1);
        const double d = t % 2 == 0 ? a : uniform(rng, 0, 1);
        const MachineSpec m = preset_deleter(kets_with_overlap(a, 2, "psi"), kets_with_overlap(d, 4, "A"));
        if (check_consistency(m).consistent != (std::abs(d - a) < kAssertTolerance)) ++disagreements;
    }
    return disagreements;
}

double termwise_linear(Rng& rng) {
    double worst = 0.0;
    const Signature acted{{"q", 4}};
    for (int t = 0; t < 100; ++t) {
        const Matrix basis = random_unitary(4, rng);
        const Matrix u = random_unitary(4, rng);
        std::vector<MachineRule> rules;
        std::vector<Ket> expansion;
        for (Eigen::Index k = 0; k < 4; ++k) {
            const Ket e(acted, basis.col(k));
            rules.push_back({e, Ket(acted, u * e.amplitudes())});
            expansion.push_back(e);
        }
        const MachineSpec m(acted, acted, rules, MachineMode::Termwise);
        const Ket state = random_ket(Signature{{"s", 3}, {"q", 4}}, rng);
        const Ket x = apply_termwise(m, state, {"q"}, StateFamily(expansion));
        const Ket y = apply_linear(extend_to_isometry(m), state, {"q"});
        worst = std::max(worst, max_entry(x.amplitudes() - y.amplitudes()));
    }
    return worst;
}

double linear_no_signalling(Rng& rng) {
    double worst = 0.0;
    const Signature bob{{"B1", 2}, {"B2", 3}};
    for (int t = 0; t < 50; ++t) {
        const Ket state = random_ket(Signature{{"B1", 2}, {"A", 3}, {"B2", 3}}, rng);
        const Ket after = apply_linear(extend_to_isometry(unitary_spec(bob, random_unitary(6, rng))), state, {"B1", "B2"});
        worst = std::max(worst, max_abs_diff(partial_trace(density_of(after), {"A"}).matrix(),
                                             partial_trace(density_of(state), {"A"}).matrix()));
    }
    return worst;
}

double bob_maximally_mixed(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        worst = std::max(worst, max_abs_diff(bob_marginal_before(random_scenario(rng)).matrix(),
                                             Matrix::Identity(4, 4) / 4.0));
    }
    return worst;
}

double isometric_no_signalling(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const TwoSingletScenario s = random_scenario(rng, 3);
        const Signature bob = s.joint().signature().select(s.bob_labels());
        worst = std::max(worst, signalling_magnitude(s, unitary_spec(bob, random_unitary(12, rng))));
    }
    return worst;
}

TwoSingletScenario tilted(double theta) {
    const BasisPair b1 = qubit_basis(0, 0);
    const BasisPair b2 = qubit_basis(theta, 0);
    return build_scenario({b1, b1}, {b2, b2});
}

double wishful_signals() {
    double least = 1.0;
    for (double theta : {kPi / 8, kPi / 4, 3 * kPi / 8}) {
        const TwoSingletScenario s = tilted(theta);
        least = std::min(least, signalling_magnitude(s, default_wishful_cloner(s)));
    }
    return least;
}

double sign_reading() {
    double worst = 0.0;
    for (double theta : {kPi / 8, kPi / 4, 3 * kPi / 8}) {
        const TwoSingletScenario s = tilted(theta);
        const MachineSpec m = default_wishful_cloner(s);
        for (int idx : {1, 2}) {
            worst = std::max(worst, max_abs_diff(bob_marginal_after(s, m, idx, SignReading::Faithful).matrix(),
                                                 bob_marginal_after(s, m, idx, SignReading::AllPlus).matrix()));
        }
    }
    return worst;
}

double marginal_validity() {
    double worst = 0.0;
    for (double theta : {kPi / 8, kPi / 4, 3 * kPi / 8}) {
        const TwoSingletScenario s = tilted(theta);
        const MachineSpec m = default_wishful_cloner(s);
        for (int idx : {1, 2}) {
            const Matrix rho = bob_marginal_after(s, m, idx).matrix();
            const Spectrum sp = eig_hermitian(rho);
            worst = std::max({worst, std::abs(rho.trace() - Complex(1.0)), max_abs_diff(rho, rho.adjoint()),
                              -sp.values(sp.values.size() - 1)});
        }
    }
    return worst;
}

template <typename F>
void over_grid(F&& f) {
    for (int i = 0; i <= 10; ++i) {
        for (int j = 0; j <= 10; ++j) {
            for (int k = 0; k <= 10; ++k) f(i / 10.0, j / 10.0, k / 10.0);
        }
    }
}

double closed_form_eigenvalues() {
    double worst = 0.0;
    over_grid([&](double a, double b, double c) {
        const EntanglementDelta d = entanglement_delta(build_conservation(a, b, c));
        worst = std::max({worst, std::abs(d.lambda_before - lambda_before(a, b)),
                          std::abs(d.lambda_after - lambda_after(a, c))});
    });
    return worst;
}

double surface_delta() {
    double worst = 0.0;
    over_grid([&](double a, double b, double c) {
        const EntanglementDelta d = entanglement_delta(build_conservation(a, b, c));
        worst = std::max(worst, std::abs(d.delta_lambda - (a * a * c - a * b) / 2));
    });
    return worst;
}

double physical_cloner_alice(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 30; ++t) {
        const Complex a = std::polar(uniform(rng, 0, 1), uniform(rng, 0, 2 * kPi));
        const Complex c = std::polar(uniform(rng, 0, 1), uniform(rng, 0, 2 * kPi));
        const ConservationScenario s = build_conservation(a, a * c, c);
        const Ket out = apply_linear(extend_to_isometry(s.cloner()), s.prepared(), s.bob_input_labels());
        worst = std::max(worst, max_abs_diff(partial_trace(density_of(out), {s.labels().alice}).matrix(),
                                             alice_marginal_before(s).matrix()));
    }
    return worst;
}

struct RoundTrip {
    double member = 0.0;
    double isometry = 0.0;
};

RoundTrip equivalence_round_trip(Rng& rng) {
    RoundTrip worst;
    for (int t = 0; t < 100; ++t) {
        const std::size_t dim = 2 + static_cast<std::size_t>(t % 7);
        const std::size_t n = 1 + static_cast<std::size_t>(t / 8) % dim;
        std::vector<Ket> f;
        for (std::size_t k = 0; k < n; ++k) f.push_back(random_ket(Signature{{"f", dim}}, rng));
        const Matrix hide = random_unitary(static_cast<Eigen::Index>(dim), rng);
        std::vector<Ket> g;
        for (const Ket& k : f) g.push_back(Ket(Signature{{"g", dim}}, hide * k.amplitudes()));
        const LinearMachine u = equivalence_unitary(StateFamily(f), StateFamily(g));
        worst.isometry = std::max(worst.isometry, u.isometry_residual());
        for (std::size_t k = 0; k < n; ++k) {
            worst.member = std::max(worst.member, max_entry(u.matrix() * f[k].amplitudes() - g[k].amplitudes()));
        }
    }
    return worst;
}

double gram_mismatch_detected(Rng& rng) {
    int missed = 0;
    for (int t = 0; t < 20; ++t) {
        const Signature fs{{"f", 4}};
        std::vector<Ket> f{random_ket(fs, rng), random_ket(fs, rng), random_ket(fs, rng)};
        std::vector<Ket> g;
        for (const Ket& k : f) g.push_back(k.relabeled({"g"}));
        g.back() = (g.back() + Complex(0.2) * random_ket(Signature{{"g", 4}}, rng)).normalized();
        try {
            equivalence_unitary(StateFamily(f), StateFamily(g));
            ++missed;
        } catch (const GramMismatch&) {
        }
    }
    return missed;
}

std::vector<ScenarioConfig> sample_configs() {
    std::vector<ScenarioConfig> out;
    ScenarioConfig ns;
    out.push_back(ns);
    ns.machine_mode = MachineMode::LinearExtension;
    out.push_back(ns);
    ScenarioConfig cons;
    cons.kind = ScenarioKind::Conservation;
    out.push_back(cons);
    cons.b_phase = 1.0;
    cons.branch_weight = 0.3;
    out.push_back(cons);
    ScenarioConfig gram;
    gram.kind = ScenarioKind::GramEquivalence;
    out.push_back(gram);
    return out;
}

double report_round_trip() {
    int bad = 0;
    for (const ScenarioConfig& c : sample_configs()) {
        const ScenarioReport r = run(c);
        for (OutputFormat f : {OutputFormat::Csv, OutputFormat::Json}) {
            if (!(parse_report(render(r, f), f) == r)) ++bad;
        }
    }
    return bad;
}

double run_deterministic() {
    int bad = 0;
    for (const ScenarioConfig& c : sample_configs()) {
        if (render(run(c), OutputFormat::Csv) != render(run(c), OutputFormat::Csv)) ++bad;
    }
    return bad;
}

struct Check {
    const char* name;
    double tolerance;
    bool lower_bound;
    std::function<double(Rng&)> measure;
};

}  // namespace

std::vector<CheckResult> verify(const VerifyOptions& options) {
    // Count-valued checks (disagreements, misses) use tolerance 0.5.
    RoundTrip round_trip;
    const std::vector<Check> checks = {
        {"tensor.partial_trace_composition", 1e-12, false, partial_trace_composition},
        {"tensor.local_isometry_norm", 1e-12, false, local_isometry_norm},
        {"linalg.eigen_reconstruction", 1e-12, false, eigen_reconstruction},
        {"linalg.eigenvector_orthonormality", 1e-12, false, eigenvector_orthonormality},
        {"linalg.trace_distance_symmetry", 1e-12, false, trace_distance_symmetry},
        {"states.singlet_invariance", 1e-10, false, singlet_invariance},
        {"states.overlap_construction", 1e-12, false, overlap_construction},
        {"machines.isometry_extension", 1e-10, false, isometry_extension},
        {"machines.strong_cloner_condition", 0.5, false, strong_cloner_condition},
        {"machines.strong_cloner_deviation", 1e-12, false, strong_cloner_deviation},
        {"machines.deleter_condition", 0.5, false, deleter_condition},
        {"machines.termwise_linear_agreement", 1e-10, false, termwise_linear},
        {"machines.linear_no_signalling", 1e-12, false, linear_no_signalling},
        {"nosignal.bob_maximally_mixed", 1e-12, false, bob_maximally_mixed},
        {"nosignal.isometric_no_signalling", 1e-12, false, isometric_no_signalling},
        {"nosignal.wishful_signals", 1e-9, true, [](Rng&) { return wishful_signals(); }},
        {"nosignal.sign_reading_invariance", 1e-12, false, [](Rng&) { return sign_reading(); }},
        {"nosignal.marginal_validity", 1e-10, false, [](Rng&) { return marginal_validity(); }},
        {"conservation.closed_form_eigenvalues", 1e-12, false, [](Rng&) { return closed_form_eigenvalues(); }},
        {"conservation.surface_delta", 1e-12, false, [](Rng&) { return surface_delta(); }},
        {"conservation.physical_cloner_preserves_alice", 1e-12, false, physical_cloner_alice},
        {"conservation.equivalence_member_residual", 1e-8, false,
         [&](Rng& rng) {
             round_trip = equivalence_round_trip(rng);
             return round_trip.member;
         }},
        {"conservation.equivalence_isometry_residual", 1e-10, false, [&](Rng&) { return round_trip.isometry; }},
        {"conservation.gram_mismatch_detected", 0.5, false, gram_mismatch_detected},
        {"cli.report_round_trip", 0.5, false, [](Rng&) { return report_round_trip(); }},
        {"cli.run_deterministic", 0.5, false, [](Rng&) { return run_deterministic(); }},
    };
    std::vector<CheckResult> out;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        Rng rng(options.seed + i);
        CheckResult r;
        r.name = checks[i].name;
        r.tolerance = options.tolerance.value_or(checks[i].tolerance);
        r.lower_bound = checks[i].lower_bound;
        r.value = checks[i].measure(rng);
        r.pass = r.lower_bound ? r.value > r.tolerance : r.value < r.tolerance;
        out.push_back(r);
    }
    return out;
}

std::string render_checks(const std::vector<CheckResult>& results, const VerifyOptions& options) {
    std::size_t width = 0;
    for (const auto& r : results) width = std::max(width, r.name.size());
    std::string out;
    int passed = 0;
    char buf[128];
    for (const auto& r : results) {
        passed += r.pass ? 1 : 0;
        std::snprintf(buf, sizeof buf, "%-*s  %.3e  (%s %.3e)\n", static_cast<int>(width), r.name.c_str(),
                      r.value == 0.0 ? 0.0 : r.value, r.lower_bound ? ">" : "<", r.tolerance);
        out += std::string(r.pass ? "PASS  " : "FAIL  ") + buf;
    }
    std::snprintf(buf, sizeof buf, "%d/%zu checks passed (seed %llu)\n", passed, results.size(),
                  static_cast<unsigned long long>(options.seed));
    return out + buf;
}

}  // namespace nclab
