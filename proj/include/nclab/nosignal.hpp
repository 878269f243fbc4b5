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

#pragma once

// Two shared singlets, a cloner on Bob's side, and Bob's view of Alice's
// basis choice.

#include <cstddef>
#include <string>

#include "nclab/machines.hpp"
#include "nclab/states.hpp"

namespace nclab {

struct TwoSingletLabels {
    std::string alice_psi = "Apsi";
    std::string alice_alpha = "Aalpha";
    std::string bob_psi = "Bpsi";
    std::string bob_alpha = "Balpha";
    std::string ancilla = "C";
};

/// The psi-singlet basis and the alpha-singlet basis for one measurement
/// setting of Alice.
struct BasisChoice {
    BasisPair psi;
    BasisPair alpha;
};

class TwoSingletScenario {
 public:
    TwoSingletScenario(BasisChoice basis1, BasisChoice basis2, std::size_t ancilla_dim, TwoSingletLabels labels = {});

    const TwoSingletLabels& labels() const { return labels_; }
    /// index is 1 or 2.
    const BasisChoice& basis(int index) const;
    const Ket& ancilla_ready() const { return ancilla_ready_; }
    /// singlet(psi) (x) singlet(alpha) (x) |C> over (Apsi, Bpsi, Aalpha, Balpha, C).
    const Ket& joint() const { return joint_; }

    Labels alice_labels() const { return {labels_.alice_psi, labels_.alice_alpha}; }
    Labels bob_labels() const { return {labels_.bob_psi, labels_.bob_alpha, labels_.ancilla}; }
    Labels bob_qubits() const { return {labels_.bob_psi, labels_.bob_alpha}; }
    WishfulLabels wishful_labels() const { return {labels_.bob_psi, labels_.bob_alpha}; }

 private:
    TwoSingletLabels labels_;
    BasisChoice basis1_;
    BasisChoice basis2_;
    Ket ancilla_ready_;
    Ket joint_;
};

TwoSingletScenario build_scenario(const BasisChoice& basis1, const BasisChoice& basis2, std::size_t ancilla_dim = 4);

/// Bob's two-qubit marginal before any machine acts.
DensityMatrix bob_marginal_before(const TwoSingletScenario& s);

/// Orthonormal expansion of Bob's qubits in basis `index`, each element
/// tensored with the ancilla ready state.
StateFamily bob_expansion(const TwoSingletScenario& s, int index);

enum class CrossOutputs { Passthrough, Swapped };

struct WishfulOptions {
    CrossOutputs cross = CrossOutputs::Passthrough;
    /// <C1|C2> of the marker ancilla outputs.
    Complex ancilla_overlap = 0.0;
};

/// The four-rule wishful cloner written in basis `index`.
MachineSpec wishful_cloner_for(const TwoSingletScenario& s, int index, const WishfulOptions& options = {});
/// Union of the basis-1 and basis-2 wishful cloners (eight rules, termwise).
MachineSpec default_wishful_cloner(const TwoSingletScenario& s, const WishfulOptions& options = {});

/// Faithful keeps the expansion signs of the product of singlets; AllPlus
/// rebuilds the post-machine state with every branch at +1/2.
enum class SignReading { Faithful, AllPlus };

/// Bob's state (qubits and ancilla) averaged over the four outcomes of
/// Alice's product measurement in basis `alice_basis_index`. A termwise
/// machine is expanded in that same basis; a linear-extension machine is
/// first extended to an isometry.
DensityMatrix bob_marginal_after(const TwoSingletScenario& s, const MachineSpec& m, int alice_basis_index,
                                 SignReading reading = SignReading::Faithful);

/// trace_distance(bob_marginal_after(s, m, 1), bob_marginal_after(s, m, 2)).
double signalling_magnitude(const TwoSingletScenario& s, const MachineSpec& m);

}  // namespace nclab
