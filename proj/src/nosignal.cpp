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

#include "nclab/nosignal.hpp"

#include <array>
#include <optional>

#include "nclab/linalg.hpp"

namespace nclab {

namespace {

void require_index(int index) {
    if (index != 1 && index != 2) {
        throw DomainError("basis index must be 1 or 2, got " + std::to_string(index));
    }
}

struct Branch {
    Ket alice;
    Ket bob_input;
};

// Alice's outcome and Bob's matching input for each term of the product of
// singlets written in basis `index`.
std::vector<Branch> singlet_branches(const TwoSingletScenario& s, int index) {
    const auto& l = s.labels();
    const BasisChoice& b = s.basis(index);
    const std::array<std::pair<const Ket*, const Ket*>, 2> psi_terms{{{&b.psi.primary, &b.psi.complement},
                                                                      {&b.psi.complement, &b.psi.primary}}};
    const std::array<std::pair<const Ket*, const Ket*>, 2> alpha_terms{{{&b.alpha.primary, &b.alpha.complement},
                                                                        {&b.alpha.complement, &b.alpha.primary}}};
    std::vector<Branch> out;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const auto& [ap, bp] = psi_terms[i];
            const auto& [aa, ba] = alpha_terms[j];
            out.push_back({tensor(ap->relabeled({l.alice_psi}), aa->relabeled({l.alice_alpha})),
                           tensor({bp->relabeled({l.bob_psi}), ba->relabeled({l.bob_alpha}), s.ancilla_ready()})});
        }
    }
    return out;
}

Ket run_machine(const TwoSingletScenario& s, const MachineSpec& m, int index, const Ket& state) {
    if (m.mode() == MachineMode::Termwise) {
        return apply_termwise(m, state, s.bob_labels(), bob_expansion(s, index));
    }
    return apply_linear(extend_to_isometry(m), state, s.bob_labels());
}

}  // namespace

TwoSingletScenario::TwoSingletScenario(BasisChoice basis1, BasisChoice basis2, std::size_t ancilla_dim,
                                       TwoSingletLabels labels)
    : labels_(std::move(labels)),
      basis1_(std::move(basis1)),
      basis2_(std::move(basis2)),
      ancilla_ready_(Ket::basis(labels_.ancilla, ancilla_dim, 0)),
      joint_(tensor({singlet(basis1_.psi, labels_.alice_psi, labels_.bob_psi),
                     singlet(basis1_.alpha, labels_.alice_alpha, labels_.bob_alpha), ancilla_ready_})) {}

const BasisChoice& TwoSingletScenario::basis(int index) const {
    require_index(index);
    return index == 1 ? basis1_ : basis2_;
}

TwoSingletScenario build_scenario(const BasisChoice& basis1, const BasisChoice& basis2, std::size_t ancilla_dim) {
    return TwoSingletScenario(basis1, basis2, ancilla_dim);
}

DensityMatrix bob_marginal_before(const TwoSingletScenario& s) {
    return partial_trace(density_of(s.joint()), s.bob_qubits());
}

StateFamily bob_expansion(const TwoSingletScenario& s, int index) {
    const auto& l = s.labels();
    const BasisChoice& b = s.basis(index);
    std::vector<Ket> members;
    for (const Ket* p : {&b.psi.primary, &b.psi.complement}) {
        for (const Ket* a : {&b.alpha.primary, &b.alpha.complement}) {
            members.push_back(tensor({p->relabeled({l.bob_psi}), a->relabeled({l.bob_alpha}), s.ancilla_ready()}));
        }
    }
    return StateFamily(std::move(members));
}

MachineSpec wishful_cloner_for(const TwoSingletScenario& s, int index, const WishfulOptions& options) {
    const BasisChoice& b = s.basis(index);
    const auto labels = s.wishful_labels();
    const auto cross = options.cross == CrossOutputs::Passthrough
                           ? passthrough_cross_outputs(b.psi, b.alpha, s.ancilla_ready(), labels)
                           : swapped_cross_outputs(b.psi, b.alpha, s.ancilla_ready(), labels);
    const auto markers = marker_ancilla_outputs(s.labels().ancilla, s.ancilla_ready().dim(), options.ancilla_overlap);
    return preset_wishful_cloner(b.psi, b.alpha, cross, markers, s.ancilla_ready(), labels);
}

MachineSpec default_wishful_cloner(const TwoSingletScenario& s, const WishfulOptions& options) {
    return wishful_cloner_for(s, 1, options).merged(wishful_cloner_for(s, 2, options));
}

DensityMatrix bob_marginal_after(const TwoSingletScenario& s, const MachineSpec& m, int alice_basis_index,
                                 SignReading reading) {
    require_index(alice_basis_index);
    const auto branches = singlet_branches(s, alice_basis_index);

    std::optional<Ket> post;
    if (reading == SignReading::Faithful) {
        post = run_machine(s, m, alice_basis_index, s.joint());
    } else {
        for (const auto& br : branches) {
            Ket term = Complex(0.5) * tensor(br.alice, run_machine(s, m, alice_basis_index, br.bob_input));
            post = post ? *post + term : term;
        }
    }

    std::vector<Ket> conditioned;
    conditioned.reserve(branches.size());
    for (const auto& br : branches) {
        conditioned.push_back(contract(br.alice, *post));
    }
    return mixture_of(conditioned);
}

double signalling_magnitude(const TwoSingletScenario& s, const MachineSpec& m) {
    return trace_distance(bob_marginal_after(s, m, 1), bob_marginal_after(s, m, 2));
}

}  // namespace nclab
