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

// A two-branch entangled state shared with a remote party, a strong cloner
// on Bob's side, and the effect on Alice's reduced state.

#include <string>

#include "nclab/machines.hpp"
#include "nclab/states.hpp"

namespace nclab {

/// a = <psi_i|psi_j>, b = <alpha_i|alpha_j>, c = <C_i|C_j>.
struct Overlaps {
    Complex a = 0.0;
    Complex b = 0.0;
    Complex c = 0.0;
};

struct ConservationOptions {
    std::size_t ancilla_dim = 4;
    /// Probability of the |0>_A branch. 0.5 is the balanced state; other
    /// values select the general-amplitude variant.
    double branch_weight = 0.5;
};

struct ConservationLabels {
    std::string alice = "A";
    std::string psi = "psi";
    std::string alpha = "alpha";
    std::string copy = "copy";
    std::string ancilla = "C";
    std::string env = "env";
};

class ConservationScenario {
 public:
    ConservationScenario(Overlaps overlaps, ConservationOptions options, ConservationLabels labels = {});

    const Overlaps& overlaps() const { return overlaps_; }
    const ConservationOptions& options() const { return options_; }
    const ConservationLabels& labels() const { return labels_; }
    /// sqrt(w)|0>|psi_i>|alpha_i> + sqrt(1-w)|1>|psi_j>|alpha_j> over (A, psi, alpha).
    const Ket& shared() const { return shared_; }
    /// Strong cloner built from the scenario's overlaps.
    const MachineSpec& cloner() const { return cloner_; }
    /// shared (x) |0>_copy (x) |C>: the state Bob's machine acts on.
    Ket prepared() const;
    Labels bob_input_labels() const;
    StateFamily alice_branches() const;

 private:
    Overlaps overlaps_;
    ConservationOptions options_;
    ConservationLabels labels_;
    Ket shared_;
    MachineSpec cloner_;
};

/// |a|, |b|, |c| <= 1; branch weight in (0, 1).
ConservationScenario build_conservation(Complex a, Complex b, Complex c, ConservationOptions options = {});

DensityMatrix alice_marginal_before(const ConservationScenario& s);
/// Runs the strong cloner branch by branch (valid even when the cloner is
/// not physical) and traces out Bob's registers.
DensityMatrix alice_marginal_after(const ConservationScenario& s);

/// Alice's marginal written out: diagonal (w, 1-w), coherence
/// sqrt(w(1-w)) * overlap in the |1><0| entry.
Matrix alice_marginal_closed_form(double branch_weight, Complex branch_overlap);

/// 1/2 + |a||b|/2.
double lambda_before(Complex a, Complex b);
/// 1/2 + |a|^2 |c|/2.
double lambda_after(Complex a, Complex c);
/// Largest eigenvalue of the closed-form marginal for any branch weight.
double lambda_general(double branch_weight, double overlap_modulus);

struct EntanglementDelta {
    double lambda_before = 0.0;
    double lambda_after = 0.0;
    double entropy_before = 0.0;
    double entropy_after = 0.0;
    double delta_lambda = 0.0;
    double delta_entropy = 0.0;
};

/// Leading eigenvalues and entropies of Alice's marginal before and after the
/// cloner, computed numerically.
EntanglementDelta entanglement_delta(const ConservationScenario& s);

class GramMismatch : public Error {
 public:
    GramMismatch(double max_deviation, double tolerance);
    double max_deviation() const { return max_deviation_; }

 private:
    double max_deviation_;
};

/// Isometry U with U f_k = g_k, built on span(f) and completed
/// deterministically. Throws GramMismatch when the Gram matrices differ by
/// `tol` or more, and SignatureError when g's space is smaller than f's.
LinearMachine equivalence_unitary(const StateFamily& f, const StateFamily& g, double tol = kAssertTolerance);

}  // namespace nclab
