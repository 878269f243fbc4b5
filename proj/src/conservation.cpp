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

#include "nclab/conservation.hpp"

#include <cmath>
#include <sstream>

#include "nclab/linalg.hpp"

namespace nclab {

namespace {

void require_modulus(Complex z, const char* name) {
    if (!(std::abs(z) <= 1.0 + 1e-12)) {
        std::ostringstream os;
        os << "overlap " << name << " has modulus " << std::abs(z) << " > 1";
        throw DomainError(os.str());
    }
}

MachineSpec build_cloner(const Overlaps& o, const ConservationOptions& opt, const ConservationLabels& l) {
    const auto psi = kets_with_overlap(o.a, 2, l.psi);
    const auto alpha = kets_with_overlap(o.b, 2, l.alpha);
    const auto env = kets_with_overlap(o.c, 2 * opt.ancilla_dim, l.env);
    return preset_strong_cloner(psi, alpha, env, opt.ancilla_dim, ClonerLabels{l.copy, l.ancilla});
}

Ket build_shared(const Overlaps& o, const ConservationOptions& opt, const ConservationLabels& l) {
    const auto psi = kets_with_overlap(o.a, 2, l.psi);
    const auto alpha = kets_with_overlap(o.b, 2, l.alpha);
    const Ket zero = Ket::basis(l.alice, 2, 0);
    const Ket one = Ket::basis(l.alice, 2, 1);
    return Complex(std::sqrt(opt.branch_weight)) * tensor({zero, psi.first, alpha.first}) +
           Complex(std::sqrt(1.0 - opt.branch_weight)) * tensor({one, psi.second, alpha.second});
}

double leading_eigenvalue(const DensityMatrix& rho) { return eig_hermitian(rho.matrix()).values[0]; }

}  // namespace

ConservationScenario::ConservationScenario(Overlaps overlaps, ConservationOptions options, ConservationLabels labels)
    : overlaps_(overlaps),
      options_(options),
      labels_(std::move(labels)),
      shared_(build_shared(overlaps_, options_, labels_)),
      cloner_(build_cloner(overlaps_, options_, labels_)) {}

Ket ConservationScenario::prepared() const {
    return tensor({shared_, Ket::basis(labels_.copy, 2, 0), Ket::basis(labels_.ancilla, options_.ancilla_dim, 0)});
}

Labels ConservationScenario::bob_input_labels() const {
    return {labels_.psi, labels_.copy, labels_.alpha, labels_.ancilla};
}

StateFamily ConservationScenario::alice_branches() const {
    return StateFamily({Ket::basis(labels_.alice, 2, 0), Ket::basis(labels_.alice, 2, 1)});
}

ConservationScenario build_conservation(Complex a, Complex b, Complex c, ConservationOptions options) {
    require_modulus(a, "a");
    require_modulus(b, "b");
    require_modulus(c, "c");
    if (!(options.branch_weight > 0.0 && options.branch_weight < 1.0)) {
        throw DomainError("branch weight must lie in (0, 1), got " + std::to_string(options.branch_weight));
    }
    if (options.ancilla_dim < 2) {
        throw DomainError("ancilla dimension must be at least 2");
    }
    return ConservationScenario(Overlaps{a, b, c}, options);
}

DensityMatrix alice_marginal_before(const ConservationScenario& s) {
    return partial_trace(density_of(s.shared()), {s.labels().alice});
}

DensityMatrix alice_marginal_after(const ConservationScenario& s) {
    const Ket after = apply_branchwise(s.cloner(), s.prepared(), s.bob_input_labels(), s.alice_branches());
    return partial_trace(density_of(after), {s.labels().alice});
}

Matrix alice_marginal_closed_form(double branch_weight, Complex branch_overlap) {
    const double w = branch_weight;
    const double amp = std::sqrt(w * (1.0 - w));
    Matrix m(2, 2);
    m << w, amp * std::conj(branch_overlap), amp * branch_overlap, 1.0 - w;
    return m;
}

double lambda_before(Complex a, Complex b) { return 0.5 + std::abs(a) * std::abs(b) / 2.0; }

double lambda_after(Complex a, Complex c) { return 0.5 + std::norm(a) * std::abs(c) / 2.0; }

double lambda_general(double branch_weight, double overlap_modulus) {
    const double bias = 2.0 * branch_weight - 1.0;
    const double coherence = 4.0 * branch_weight * (1.0 - branch_weight) * overlap_modulus * overlap_modulus;
    return 0.5 + 0.5 * std::sqrt(bias * bias + coherence);
}

EntanglementDelta entanglement_delta(const ConservationScenario& s) {
    const DensityMatrix before = alice_marginal_before(s);
    const DensityMatrix after = alice_marginal_after(s);
    EntanglementDelta d;
    d.lambda_before = leading_eigenvalue(before);
    d.lambda_after = leading_eigenvalue(after);
    d.entropy_before = entropy(before);
    d.entropy_after = entropy(after);
    d.delta_lambda = d.lambda_after - d.lambda_before;
    d.delta_entropy = d.entropy_after - d.entropy_before;
    return d;
}

GramMismatch::GramMismatch(double max_deviation, double tolerance)
    : Error([&] {
          std::ostringstream os;
          os << "Gram matrices differ by " << max_deviation << " (tolerance " << tolerance << ")";
          return os.str();
      }()),
      max_deviation_(max_deviation) {}

LinearMachine equivalence_unitary(const StateFamily& f, const StateFamily& g, double tol) {
    if (f.size() != g.size()) {
        throw SignatureError("families have " + std::to_string(f.size()) + " and " + std::to_string(g.size()) +
                             " members");
    }
    if (g.signature().total_dim() < f.signature().total_dim()) {
        throw SignatureError("target space " + g.signature().to_string() + " is smaller than source space " +
                             f.signature().to_string());
    }
    const double dev = max_abs_diff(gram(f), gram(g));
    if (dev >= tol) {
        throw GramMismatch(dev, tol);
    }
    std::vector<MachineRule> rules;
    for (std::size_t k = 0; k < f.size(); ++k) {
        rules.push_back({f[k], g[k]});
    }
    return extend_to_isometry(MachineSpec(f.signature(), g.signature(), std::move(rules), MachineMode::LinearExtension),
                              tol);
}

}  // namespace nclab
