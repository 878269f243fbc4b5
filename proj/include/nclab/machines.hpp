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

// Machines: maps declared on a finite set of input kets.
//
// A machine in linear-extension mode is physical only if it preserves the
// Gram matrix of its declared inputs; extend_to_isometry then builds the
// matrix. Termwise mode applies the declared rules branch by branch in a
// caller-chosen expansion, which is how a hypothetical cloner that violates
// Gram preservation is "run".

#include <string>
#include <utility>
#include <vector>

#include "nclab/states.hpp"
#include "nclab/tensor.hpp"

namespace nclab {

enum class MachineMode { LinearExtension, Termwise };

std::string to_string(MachineMode mode);

struct MachineRule {
    Ket input;
    Ket output;
};

class MachineSpec {
 public:
    MachineSpec(Signature input_signature, Signature output_signature, std::vector<MachineRule> rules,
                MachineMode mode, double tol = kAssertTolerance);

    const Signature& input_signature() const { return input_signature_; }
    const Signature& output_signature() const { return output_signature_; }
    const std::vector<MachineRule>& rules() const { return rules_; }
    MachineMode mode() const { return mode_; }

    StateFamily inputs() const;
    StateFamily outputs() const;

    MachineSpec with_mode(MachineMode mode) const;
    /// Our rules followed by `other`'s; signatures must agree.
    MachineSpec merged(const MachineSpec& other) const;

 private:
    Signature input_signature_;
    Signature output_signature_;
    std::vector<MachineRule> rules_;
    MachineMode mode_;
};

/// Isometry (output dim x input dim) with M^dagger M = I within 1e-10.
class LinearMachine {
 public:
    LinearMachine(Matrix matrix, Signature input_signature, Signature output_signature, double tol = kAssertTolerance);

    const Matrix& matrix() const { return matrix_; }
    const Signature& input_signature() const { return input_signature_; }
    const Signature& output_signature() const { return output_signature_; }
    /// max |M^dagger M - I|.
    double isometry_residual() const;

 private:
    Matrix matrix_;
    Signature input_signature_;
    Signature output_signature_;
};

struct ConsistencyReport {
    Matrix input_gram;
    Matrix output_gram;
    double max_deviation = 0.0;
    bool consistent = true;
};

class InconsistentGram : public Error {
 public:
    explicit InconsistentGram(ConsistencyReport report);
    const ConsistencyReport& report() const { return report_; }

 private:
    ConsistencyReport report_;
};

class DependentInputsConflict : public Error {
 public:
    using Error::Error;
};

/// An expansion element or branch that the machine does not declare.
class UncoveredTerm : public Error {
 public:
    using Error::Error;
};

ConsistencyReport check_consistency(const MachineSpec& m, double tol = kAssertTolerance);

/// Isometry reproducing every declared pair. The orthogonal complement of the
/// input span is mapped deterministically: complement vectors come from
/// Gram-Schmidt over the standard basis in index order, on both sides.
LinearMachine extend_to_isometry(const MachineSpec& m, double tol = kAssertTolerance);

/// (I_spectators (x) M) applied to the factors `acted`, listed in the order
/// of the machine's input signature.
Ket apply_linear(const LinearMachine& lm, const Ket& state, const Labels& acted);

/// Expands the acted factors over the orthonormal `expansion` (a family over
/// the machine's input signature), replaces each element by the output of
/// the declared rule it matches (up to phase) and keeps the coefficients.
/// The state must lie in the expansion's span on the acted factors.
Ket apply_termwise(const MachineSpec& m, const Ket& state, const Labels& acted, const StateFamily& expansion,
                   bool renormalize = false, double tol = kAssertTolerance);

/// Conditions the state on each orthonormal branch of the untouched factors;
/// the acted part of branch k must be proportional to declared input k and is
/// replaced by the same multiple of declared output k.
Ket apply_branchwise(const MachineSpec& m, const Ket& state, const Labels& acted, const StateFamily& branches,
                     bool renormalize = false, double tol = kAssertTolerance);

// ---------------------------------------------------------------------------
// Presets

struct WishfulLabels {
    std::string psi = "Bpsi";
    std::string alpha = "Balpha";
};

/// |psi>|alpha-bar>|C> and |psi-bar>|alpha>|C> unchanged.
std::pair<Ket, Ket> passthrough_cross_outputs(const BasisPair& psi, const BasisPair& alpha, const Ket& ancilla_ready,
                                              const WishfulLabels& labels = {});
/// The two qubits exchanged: |alpha-bar>|psi>|C> and |alpha>|psi-bar>|C>.
std::pair<Ket, Ket> swapped_cross_outputs(const BasisPair& psi, const BasisPair& alpha, const Ket& ancilla_ready,
                                          const WishfulLabels& labels = {});
/// Marker states e_1 and overlap e_1 + sqrt(1 - overlap^2) e_2, both
/// orthogonal to the ready state e_0. Needs dim >= 3.
std::pair<Ket, Ket> marker_ancilla_outputs(const std::string& label, std::size_t dim, Complex overlap = 0.0);

/// Four rules, termwise mode:
///   |psi>|alpha>|C>         -> |psi>|psi>|C1>
///   |psi-bar>|alpha-bar>|C> -> |psi-bar>|psi-bar>|C2>
///   |psi>|alpha-bar>|C>     -> |phi>
///   |psi-bar>|alpha>|C>     -> |phi-bar>
MachineSpec preset_wishful_cloner(const BasisPair& psi, const BasisPair& alpha, const std::pair<Ket, Ket>& cross_outputs,
                                  const std::pair<Ket, Ket>& ancilla_outputs, const Ket& ancilla_ready,
                                  const WishfulLabels& labels = {});

struct ClonerLabels {
    std::string copy = "copy";
    std::string ancilla = "C";
};

/// |psi_k>|0>|alpha_k>|C> -> |psi_k>|psi_k>|C_k> for both k, linear-extension
/// mode. The blank register takes psi's dimension; |C> = e_0 of
/// `ancilla_dim`. The outputs' ancilla register replaces alpha and C, so its
/// dimension must be at least dim(alpha) * ancilla_dim.
MachineSpec preset_strong_cloner(const std::pair<Ket, Ket>& psi, const std::pair<Ket, Ket>& alpha,
                                 const std::pair<Ket, Ket>& ancilla_out, std::size_t ancilla_dim = 4,
                                 const ClonerLabels& labels = {});

/// |psi_k>|psi_k>|A> -> |psi_k>|0>|A_k>, linear-extension mode, with |A> = e_0
/// of the ancilla outputs' register.
MachineSpec preset_deleter(const std::pair<Ket, Ket>& psi, const std::pair<Ket, Ket>& ancilla_out,
                           const std::string& copy_label = "copy");

}  // namespace nclab
