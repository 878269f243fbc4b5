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

#include "nclab/runner.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <exception>
#include <optional>
#include <thread>

#include "nclab/conservation.hpp"
#include "nclab/linalg.hpp"
#include "nclab/nosignal.hpp"
#include "nclab/random.hpp"

namespace nclab {

namespace {

void put_matrix(ScenarioReport& r, const std::string& prefix, const Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const std::string key = prefix + "." + std::to_string(i) + std::to_string(j);
            r.set(key + ".re", m(i, j).real());
            r.set(key + ".im", m(i, j).imag());
        }
    }
}

void put_tolerances(ScenarioReport& r, const ScenarioConfig& c) {
    r.set("config.tolerance.assert", c.tolerance_assert);
    r.set("config.tolerance.residual", c.tolerance_residual);
}

// max of |tr - 1|, non-Hermiticity and negative eigenvalue magnitude
double state_defect(const DensityMatrix& rho) {
    const Matrix& m = rho.matrix();
    double d = std::abs(m.trace() - Complex(1.0));
    d = std::max(d, max_abs_diff(m, m.adjoint()));
    const Spectrum s = eig_hermitian(m);
    return std::max(d, std::max(0.0, -s.values(s.values.size() - 1)));
}

BasisPair basis_of(const BlochAngles& b) { return qubit_basis(b.theta, b.phi); }

ScenarioReport run_nosignal(const ScenarioConfig& c) {
    ScenarioReport r;
    r.set("kind", to_string(c.kind));
    r.set("config.basis1.psi.theta", c.basis1_psi.theta);
    r.set("config.basis1.psi.phi", c.basis1_psi.phi);
    r.set("config.basis1.alpha.theta", c.basis1_alpha.theta);
    r.set("config.basis1.alpha.phi", c.basis1_alpha.phi);
    r.set("config.basis2.psi.theta", c.basis2_psi.theta);
    r.set("config.basis2.psi.phi", c.basis2_psi.phi);
    r.set("config.basis2.alpha.theta", c.basis2_alpha.theta);
    r.set("config.basis2.alpha.phi", c.basis2_alpha.phi);
    r.set("config.machine.mode", to_string(c.machine_mode));
    r.set("config.machine.cross_outputs", to_string(c.cross_outputs));
    r.set("config.machine.ancilla_dim", c.ancilla_dim);
    r.set("config.machine.ancilla_overlap", c.ancilla_overlap);
    put_tolerances(r, c);

    const TwoSingletScenario s =
        build_scenario({basis_of(c.basis1_psi), basis_of(c.basis1_alpha)},
                       {basis_of(c.basis2_psi), basis_of(c.basis2_alpha)}, static_cast<std::size_t>(c.ancilla_dim));
    WishfulOptions opt;
    opt.cross = c.cross_outputs;
    opt.ancilla_overlap = c.ancilla_overlap;
    // The termwise reading uses the union of both bases' rules; the linear
    // reading extends the basis-1 rules to an isometry.
    const MachineSpec machine = c.machine_mode == MachineMode::Termwise
                                    ? default_wishful_cloner(s, opt)
                                    : wishful_cloner_for(s, 1, opt).with_mode(MachineMode::LinearExtension);
    const ConsistencyReport consistency = check_consistency(machine, c.tolerance_assert);
    r.set("machine.rules", static_cast<std::int64_t>(machine.rules().size()));
    r.set("machine.consistent", consistency.consistent);
    r.set("machine.max_gram_deviation", consistency.max_deviation);
    r.set("machine.expansion_follows_measurement", c.machine_mode == MachineMode::Termwise);

    const DensityMatrix before = bob_marginal_before(s);
    put_matrix(r, "bob_before", before.matrix());

    const DensityMatrix after1 = bob_marginal_after(s, machine, 1);
    const DensityMatrix after2 = bob_marginal_after(s, machine, 2);
    const DensityMatrix q1 = partial_trace(after1, s.bob_qubits());
    const DensityMatrix q2 = partial_trace(after2, s.bob_qubits());
    put_matrix(r, "bob_after1.qubits", q1.matrix());
    put_matrix(r, "bob_after2.qubits", q2.matrix());
    const Spectrum e1 = eig_hermitian(after1.matrix());
    const Spectrum e2 = eig_hermitian(after2.matrix());
    for (int k = 0; k < 4; ++k) {
        r.set("bob_after1.eig." + std::to_string(k), e1.values(k));
    }
    for (int k = 0; k < 4; ++k) {
        r.set("bob_after2.eig." + std::to_string(k), e2.values(k));
    }
    const double magnitude = trace_distance(after1, after2);
    r.set("signalling_magnitude", magnitude);
    r.set("signalling_magnitude.qubits", trace_distance(q1, q2));

    double sign_dev = 0.0;
    for (int idx : {1, 2}) {
        const DensityMatrix& faithful = idx == 1 ? after1 : after2;
        const DensityMatrix plus = bob_marginal_after(s, machine, idx, SignReading::AllPlus);
        sign_dev = std::max(sign_dev, max_abs_diff(faithful.matrix(), plus.matrix()));
    }

    r.add_verdict("bob_before_maximally_mixed",
                  max_abs_diff(before.matrix(), Matrix::Identity(4, 4) / 4.0), c.tolerance_residual);
    r.add_verdict("marginals_valid", std::max(state_defect(after1), state_defect(after2)), c.tolerance_assert);
    r.add_verdict("sign_reading_invariance", sign_dev, c.tolerance_residual);
    r.add_verdict("no_signalling", magnitude, c.tolerance_assert);
    return r;
}

ScenarioReport run_conservation(const ScenarioConfig& c) {
    ScenarioReport r;
    r.set("kind", to_string(c.kind));
    r.set("config.overlap.a", c.a);
    r.set("config.overlap.b", c.b);
    r.set("config.overlap.c", c.c);
    r.set("config.overlap.a_phase", c.a_phase);
    r.set("config.overlap.b_phase", c.b_phase);
    r.set("config.overlap.c_phase", c.c_phase);
    r.set("config.state.branch_weight", c.branch_weight);
    r.set("config.machine.ancilla_dim", c.ancilla_dim);
    put_tolerances(r, c);

    const Complex a = std::polar(c.a, c.a_phase);
    const Complex b = std::polar(c.b, c.b_phase);
    const Complex cc = std::polar(c.c, c.c_phase);
    ConservationOptions opt;
    opt.ancilla_dim = static_cast<std::size_t>(c.ancilla_dim);
    opt.branch_weight = c.branch_weight;
    const ConservationScenario s = build_conservation(a, b, cc, opt);

    const ConsistencyReport consistency = check_consistency(s.cloner(), c.tolerance_assert);
    r.set("cloner.consistent", consistency.consistent);
    r.set("cloner.max_gram_deviation", consistency.max_deviation);
    r.set("gram_condition.phase_deviation", std::abs(b - a * cc));
    r.set("gram_condition.modulus_deviation", std::abs(std::abs(b) - std::abs(a) * std::abs(cc)));

    const DensityMatrix before = alice_marginal_before(s);
    const DensityMatrix after = alice_marginal_after(s);
    put_matrix(r, "alice_before", before.matrix());
    put_matrix(r, "alice_after", after.matrix());

    const EntanglementDelta d = entanglement_delta(s);
    const double w = c.branch_weight;
    const double closed_before = w == 0.5 ? lambda_before(a, b) : lambda_general(w, std::abs(a * b));
    const double closed_after = w == 0.5 ? lambda_after(a, cc) : lambda_general(w, std::abs(a * a * cc));
    r.set("lambda_before", d.lambda_before);
    r.set("lambda_after", d.lambda_after);
    r.set("lambda_before.closed_form", closed_before);
    r.set("lambda_after.closed_form", closed_after);
    r.set("delta_lambda", d.delta_lambda);
    r.set("entropy_before", d.entropy_before);
    r.set("entropy_after", d.entropy_after);
    r.set("delta_entropy", d.delta_entropy);

    r.add_verdict("alice_before_closed_form",
                  max_abs_diff(before.matrix(), alice_marginal_closed_form(w, a * b)), c.tolerance_residual);
    r.add_verdict("alice_after_closed_form",
                  max_abs_diff(after.matrix(), alice_marginal_closed_form(w, a * a * cc)), c.tolerance_residual);
    r.add_verdict("lambda_before_closed_form", std::abs(d.lambda_before - closed_before), c.tolerance_residual);
    r.add_verdict("lambda_after_closed_form", std::abs(d.lambda_after - closed_after), c.tolerance_residual);
    r.add_verdict("conservation", std::abs(d.delta_lambda), c.tolerance_assert);
    return r;
}

ScenarioReport run_gram(const ScenarioConfig& c) {
    if (c.mismatch > 0 && c.family_size < 2) {
        throw ConfigError("family.mismatch needs family.size >= 2", 0, "family.mismatch");
    }
    ScenarioReport r;
    r.set("kind", to_string(c.kind));
    r.set("config.family.dimension", c.family_dimension);
    r.set("config.family.size", c.family_size);
    r.set("config.family.seed", static_cast<std::int64_t>(c.seed));
    r.set("config.family.mismatch", c.mismatch);
    put_tolerances(r, c);

    Rng rng(c.seed);
    const std::size_t dim = static_cast<std::size_t>(c.family_dimension);
    const Signature fs{{"f", dim}};
    const Signature gs{{"g", dim}};
    std::vector<Ket> f;
    for (std::int64_t k = 0; k < c.family_size; ++k) f.push_back(random_ket(fs, rng));
    const Matrix hide = random_unitary(static_cast<Eigen::Index>(dim), rng);
    std::vector<Ket> g;
    for (const Ket& k : f) g.push_back(Ket(gs, hide * k.amplitudes()));
    const Ket noise = random_ket(gs, rng);
    if (c.mismatch > 0) g.back() = (g.back() + Complex(c.mismatch) * noise).normalized();

    const StateFamily ff(f);
    const StateFamily gg(g);
    const double gram_dev = max_abs_diff(gram(ff), gram(gg));
    r.set("gram_deviation", gram_dev);

    bool ok = false;
    double member = 1.0;
    double iso = 1.0;
    try {
        const LinearMachine u = equivalence_unitary(ff, gg, c.tolerance_assert);
        ok = true;
        member = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) {
            member = std::max(member, (u.matrix() * f[k].amplitudes() - g[k].amplitudes()).cwiseAbs().maxCoeff());
        }
        iso = u.isometry_residual();
    } catch (const GramMismatch&) {
    }
    r.set("reconstructed", ok);
    r.set("member_residual", member);
    r.set("isometry_residual", iso);
    r.add_verdict("gram_match", gram_dev, c.tolerance_assert);
    r.add_verdict("member_reconstruction", member, c.tolerance_assert);
    r.add_verdict("isometry", iso, c.tolerance_assert);
    return r;
}

}  // namespace

ScenarioReport run(const ScenarioConfig& config) {
    switch (config.kind) {
        case ScenarioKind::NoSignal:
            return run_nosignal(config);
        case ScenarioKind::Conservation:
            return run_conservation(config);
        case ScenarioKind::GramEquivalence:
            return run_gram(config);
    }
    throw ConfigError("unknown scenario kind");
}

std::vector<double> SweepAxis::values() const {
    if (lo == hi) return {lo};
    const double n = std::floor((hi - lo) / step + 1e-9);
    std::vector<double> out;
    for (long long i = 0; i <= static_cast<long long>(n); ++i) out.push_back(lo + static_cast<double>(i) * step);
    if (std::abs(out.back() - hi) < 1e-9 * step) out.back() = hi;
    return out;
}

SweepAxis parse_axis(const std::string& text) {
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("grid axis must look like key=lo:hi:step, got '" + text + "'");
    SweepAxis axis;
    axis.key = text.substr(0, eq);
    if (!is_numeric_key(axis.key)) throw ConfigError("'" + axis.key + "' cannot be swept", 0, axis.key);
    const std::string range = text.substr(eq + 1);
    const std::size_t c1 = range.find(':');
    if (c1 == std::string::npos) {
        axis.lo = axis.hi = parse_number(range);
        return axis;
    }
    const std::size_t c2 = range.find(':', c1 + 1);
    if (c2 == std::string::npos) throw ConfigError("grid axis '" + text + "' needs lo:hi:step", 0, axis.key);
    axis.lo = parse_number(range.substr(0, c1));
    axis.hi = parse_number(range.substr(c1 + 1, c2 - c1 - 1));
    axis.step = parse_number(range.substr(c2 + 1));
    if (axis.hi < axis.lo) throw ConfigError("grid axis '" + text + "' is empty (hi < lo)", 0, axis.key);
    if (axis.lo != axis.hi && !(axis.step > 0)) {
        throw ConfigError("grid axis '" + text + "' needs a positive step", 0, axis.key);
    }
    return axis;
}

std::vector<ScenarioReport> sweep(const ScenarioConfig& base, const std::vector<SweepAxis>& axes, unsigned jobs) {
    if (axes.empty()) throw ConfigError("empty grid");
    std::vector<std::vector<double>> values;
    std::size_t total = 1;
    for (const auto& axis : axes) {
        values.push_back(axis.values());
        total *= values.back().size();
    }
    std::vector<ScenarioConfig> configs;
    configs.reserve(total);
    std::vector<std::size_t> idx(axes.size(), 0);
    for (std::size_t p = 0; p < total; ++p) {
        ScenarioConfig c = base;
        for (std::size_t k = 0; k < axes.size(); ++k) set_number(c, axes[k].key, values[k][idx[k]]);
        validate(c);
        configs.push_back(std::move(c));
        for (std::size_t k = axes.size(); k-- > 0;) {
            if (++idx[k] < values[k].size()) break;
            idx[k] = 0;
        }
    }

    std::vector<std::optional<ScenarioReport>> results(total);
    std::vector<std::exception_ptr> errors(total);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t p = next++; p < total; p = next++) {
            try {
                results[p] = run(configs[p]);
            } catch (...) {
                errors[p] = std::current_exception();
            }
        }
    };
    const unsigned width = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(total)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < width; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<ScenarioReport> out;
    out.reserve(total);
    for (std::size_t p = 0; p < total; ++p) {
        if (errors[p]) std::rethrow_exception(errors[p]);
        out.push_back(std::move(*results[p]));
    }
    return out;
}

}  // namespace nclab
