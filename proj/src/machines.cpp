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

#include "nclab/machines.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SVD>

namespace nclab {

namespace {

// Below this residual a declared input counts as a combination of earlier ones.
constexpr double kDependenceThreshold = 1e-8;
// Standard basis vectors are accepted into a complement above this residual.
constexpr double kComplementThreshold = 1e-6;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

Matrix columns_of(const std::vector<MachineRule>& rules, bool outputs) {
    const auto& first = outputs ? rules.front().output : rules.front().input;
    Matrix m(static_cast<Eigen::Index>(first.dim()), static_cast<Eigen::Index>(rules.size()));
    for (std::size_t k = 0; k < rules.size(); ++k) {
        m.col(static_cast<Eigen::Index>(k)) = outputs ? rules[k].output.amplitudes() : rules[k].input.amplitudes();
    }
    return m;
}

// Projects `v` off the columns of `q`, twice for stability.
Vector project_off(const Matrix& q, Vector v) {
    if (q.cols() == 0) {
        return v;
    }
    for (int pass = 0; pass < 2; ++pass) {
        v -= q * (q.adjoint() * v);
    }
    return v;
}

// First `count` standard basis vectors (after orthogonalization) that extend
// the orthonormal columns of `q`.
Matrix lexicographic_complement(const Matrix& q, Eigen::Index dim, Eigen::Index count) {
    Matrix basis = q;
    Matrix out(dim, count);
    Eigen::Index found = 0;
    for (Eigen::Index k = 0; k < dim && found < count; ++k) {
        Vector e = Vector::Zero(dim);
        e[k] = 1.0;
        Vector r = project_off(basis, e);
        const double n = r.norm();
        if (n > kComplementThreshold) {
            r /= n;
            out.col(found++) = r;
            basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
            basis.col(basis.cols() - 1) = r;
        }
    }
    if (found != count) {
        throw Error("isometry completion found " + std::to_string(found) + " of " + std::to_string(count) +
                    " complement vectors");
    }
    return out;
}

// Acted sub-signature the machine output lands on: when the machine maps a
// register onto itself the state's own labels are kept.
Signature landing_signature(const Signature& machine_in, const Signature& machine_out, const Signature& acted_sig) {
    if (machine_in == machine_out) {
        return acted_sig;
    }
    return machine_out;
}

void require_matching_dims(const Signature& acted_sig, const Signature& machine_in) {
    bool ok = acted_sig.size() == machine_in.size();
    for (std::size_t i = 0; ok && i < acted_sig.size(); ++i) {
        ok = acted_sig[i].dim == machine_in[i].dim;
    }
    if (!ok) {
        throw SignatureError("acted factors " + acted_sig.to_string() + " do not match machine input " +
                             machine_in.to_string());
    }
}

Ket finish(Ket k, bool renormalize) { return renormalize ? k.normalized() : k; }

}  // namespace

std::string to_string(MachineMode mode) {
    return mode == MachineMode::LinearExtension ? "linear" : "termwise";
}

// ---------------------------------------------------------------------------

MachineSpec::MachineSpec(Signature input_signature, Signature output_signature, std::vector<MachineRule> rules,
                         MachineMode mode, double tol)
    : input_signature_(std::move(input_signature)),
      output_signature_(std::move(output_signature)),
      rules_(std::move(rules)),
      mode_(mode) {
    if (rules_.empty()) {
        throw DomainError("machine declares no rules");
    }
    if (output_signature_.total_dim() < input_signature_.total_dim()) {
        throw DomainError("machine output dimension " + std::to_string(output_signature_.total_dim()) +
                          " is smaller than input dimension " + std::to_string(input_signature_.total_dim()));
    }
    for (std::size_t k = 0; k < rules_.size(); ++k) {
        const auto& r = rules_[k];
        if (r.input.signature() != input_signature_) {
            throw SignatureError("rule " + std::to_string(k) + " input is over " + r.input.signature().to_string() +
                                 ", expected " + input_signature_.to_string());
        }
        if (r.output.signature() != output_signature_) {
            throw SignatureError("rule " + std::to_string(k) + " output is over " +
                                 r.output.signature().to_string() + ", expected " + output_signature_.to_string());
        }
        if (!r.input.is_normalized(tol) || !r.output.is_normalized(tol)) {
            throw DomainError("rule " + std::to_string(k) + " has an unnormalized ket");
        }
    }
}

StateFamily MachineSpec::inputs() const {
    std::vector<Ket> v;
    for (const auto& r : rules_) {
        v.push_back(r.input);
    }
    return StateFamily(std::move(v));
}

StateFamily MachineSpec::outputs() const {
    std::vector<Ket> v;
    for (const auto& r : rules_) {
        v.push_back(r.output);
    }
    return StateFamily(std::move(v));
}

MachineSpec MachineSpec::with_mode(MachineMode mode) const {
    MachineSpec copy = *this;
    copy.mode_ = mode;
    return copy;
}

MachineSpec MachineSpec::merged(const MachineSpec& other) const {
    if (other.input_signature_ != input_signature_ || other.output_signature_ != output_signature_) {
        throw SignatureError("cannot merge machines with different signatures");
    }
    std::vector<MachineRule> all = rules_;
    all.insert(all.end(), other.rules_.begin(), other.rules_.end());
    return MachineSpec(input_signature_, output_signature_, std::move(all), mode_);
}

LinearMachine::LinearMachine(Matrix matrix, Signature input_signature, Signature output_signature, double tol)
    : matrix_(std::move(matrix)),
      input_signature_(std::move(input_signature)),
      output_signature_(std::move(output_signature)) {
    if (static_cast<std::size_t>(matrix_.cols()) != input_signature_.total_dim() ||
        static_cast<std::size_t>(matrix_.rows()) != output_signature_.total_dim()) {
        throw SignatureError("linear machine matrix shape does not match " + input_signature_.to_string() + " -> " +
                             output_signature_.to_string());
    }
    const double res = isometry_residual();
    if (res >= tol) {
        throw DomainError("linear machine is not an isometry (residual " + fmt(res) + ")");
    }
}

double LinearMachine::isometry_residual() const {
    const auto n = matrix_.cols();
    return max_abs_diff(matrix_.adjoint() * matrix_, Matrix::Identity(n, n));
}

InconsistentGram::InconsistentGram(ConsistencyReport report)
    : Error("declared pairs do not preserve the Gram matrix (max deviation " + fmt(report.max_deviation) + ")"),
      report_(std::move(report)) {}

// ---------------------------------------------------------------------------

ConsistencyReport check_consistency(const MachineSpec& m, double tol) {
    ConsistencyReport r;
    r.input_gram = gram(m.inputs());
    r.output_gram = gram(m.outputs());
    r.max_deviation = max_abs_diff(r.input_gram, r.output_gram);
    r.consistent = r.max_deviation < tol;
    return r;
}

LinearMachine extend_to_isometry(const MachineSpec& m, double tol) {
    ConsistencyReport report = check_consistency(m, tol);
    if (!report.consistent) {
        throw InconsistentGram(std::move(report));
    }
    const Matrix x = columns_of(m.rules(), false);
    const Matrix y = columns_of(m.rules(), true);
    const Eigen::Index n_in = x.rows();
    const Eigen::Index n_out = y.rows();

    // Orthonormal basis of the input span, built in declaration order.
    Matrix q_in(n_in, 0);
    std::vector<Eigen::Index> independent;
    std::vector<Eigen::Index> dependent;
    for (Eigen::Index k = 0; k < x.cols(); ++k) {
        Vector r = project_off(q_in, x.col(k));
        const double n = r.norm();
        if (n > kDependenceThreshold) {
            q_in.conservativeResize(Eigen::NoChange, q_in.cols() + 1);
            q_in.col(q_in.cols() - 1) = r / n;
            independent.push_back(k);
        } else {
            dependent.push_back(k);
        }
    }
    const auto rank = static_cast<Eigen::Index>(independent.size());
    Matrix xi(n_in, rank), yi(n_out, rank);
    for (Eigen::Index j = 0; j < rank; ++j) {
        xi.col(j) = x.col(independent[static_cast<std::size_t>(j)]);
        yi.col(j) = y.col(independent[static_cast<std::size_t>(j)]);
    }
    // xi = q_in * r_in with r_in upper triangular.
    const Matrix r_in = q_in.adjoint() * xi;
    const auto upper = r_in.triangularView<Eigen::Upper>();

    for (Eigen::Index k : dependent) {
        const Vector coeffs = upper.solve(Vector(q_in.adjoint() * x.col(k)));
        const double miss = (yi * coeffs - y.col(k)).norm();
        if (miss >= tol) {
            throw DependentInputsConflict("declared input " + std::to_string(k) +
                                          " is a combination of earlier inputs but its output misses the "
                                          "combined output by " +
                                          fmt(miss));
        }
    }

    // Images of q_in; orthonormal up to the Gram deviation, so snap to the
    // nearest isometry.
    Matrix q_out = upper.solve<Eigen::OnTheRight>(yi);
    if (rank > 0) {
        Eigen::JacobiSVD<Matrix> svd(q_out, Eigen::ComputeThinU | Eigen::ComputeThinV);
        q_out = svd.matrixU() * svd.matrixV().adjoint();
    }

    const Matrix p_in = lexicographic_complement(q_in, n_in, n_in - rank);
    const Matrix p_out = lexicographic_complement(q_out, n_out, n_in - rank);
    Matrix mat = q_out * q_in.adjoint() + p_out * p_in.adjoint();
    return LinearMachine(std::move(mat), m.input_signature(), m.output_signature(), tol);
}

Ket apply_linear(const LinearMachine& lm, const Ket& state, const Labels& acted) {
    const Signature acted_sig = state.signature().select(acted);
    require_matching_dims(acted_sig, lm.input_signature());
    return apply_local(lm.matrix(), landing_signature(lm.input_signature(), lm.output_signature(), acted_sig), state,
                       acted);
}

Ket apply_termwise(const MachineSpec& m, const Ket& state, const Labels& acted, const StateFamily& expansion,
                   bool renormalize, double tol) {
    const Signature acted_sig = state.signature().select(acted);
    require_matching_dims(acted_sig, m.input_signature());
    if (expansion.signature() != m.input_signature()) {
        throw SignatureError("expansion is over " + expansion.signature().to_string() + ", machine input is " +
                             m.input_signature().to_string());
    }
    const auto n = static_cast<Eigen::Index>(expansion.size());
    const double ortho = max_abs_diff(gram(expansion), Matrix::Identity(n, n));
    if (ortho >= tol) {
        throw DomainError("expansion family is not orthonormal (deviation " + fmt(ortho) + ")");
    }

    // Termwise substitution on a fixed expansion is the operator
    // sum_k out_k <e_k| restricted to the expansion span.
    const auto din = static_cast<Eigen::Index>(m.input_signature().total_dim());
    const auto dout = static_cast<Eigen::Index>(m.output_signature().total_dim());
    Matrix op = Matrix::Zero(dout, din);
    Matrix projector = Matrix::Zero(din, din);
    for (std::size_t k = 0; k < expansion.size(); ++k) {
        const Ket& e = expansion[k];
        const MachineRule* match = nullptr;
        Complex phase = 0.0;
        for (const auto& rule : m.rules()) {
            const Complex w = inner(rule.input, e);
            if ((e.amplitudes() - w * rule.input.amplitudes()).norm() < tol) {
                match = &rule;
                phase = w;
                break;
            }
        }
        if (match == nullptr) {
            throw UncoveredTerm("expansion element " + std::to_string(k) + " matches no declared input");
        }
        op.noalias() += phase * match->output.amplitudes() * e.amplitudes().adjoint();
        projector.noalias() += e.amplitudes() * e.amplitudes().adjoint();
    }

    const Ket inside = apply_local(projector, acted_sig, state, acted);
    const double outside = (state.amplitudes() - inside.amplitudes()).norm();
    if (outside >= tol * std::max(1.0, state.norm())) {
        throw UncoveredTerm("state has weight " + fmt(outside) + " outside the expansion span");
    }
    return finish(apply_local(op, landing_signature(m.input_signature(), m.output_signature(), acted_sig), state, acted),
                  renormalize);
}

Ket apply_branchwise(const MachineSpec& m, const Ket& state, const Labels& acted, const StateFamily& branches,
                     bool renormalize, double tol) {
    const Signature acted_sig = state.signature().select(acted);
    require_matching_dims(acted_sig, m.input_signature());
    const Signature spectators = state.signature().without(acted);
    if (branches.signature() != spectators) {
        throw SignatureError("branches are over " + branches.signature().to_string() + ", untouched factors are " +
                             spectators.to_string());
    }
    if (branches.size() != m.rules().size()) {
        throw DomainError("branchwise application needs one branch per declared rule (" +
                          std::to_string(m.rules().size()) + "), got " + std::to_string(branches.size()));
    }
    const auto n = static_cast<Eigen::Index>(branches.size());
    const double ortho = max_abs_diff(gram(branches), Matrix::Identity(n, n));
    if (ortho >= tol) {
        throw DomainError("branch family is not orthonormal (deviation " + fmt(ortho) + ")");
    }

    const Signature landing = landing_signature(m.input_signature(), m.output_signature(), acted_sig);
    Labels in_order = spectators.labels();
    in_order.insert(in_order.end(), acted.begin(), acted.end());
    const Ket arranged = state.permuted(in_order);

    Vector rebuilt = Vector::Zero(arranged.amplitudes().size());
    Vector result = Vector::Zero(static_cast<Eigen::Index>(spectators.total_dim() * landing.total_dim()));
    for (std::size_t k = 0; k < branches.size(); ++k) {
        const Ket cond = contract(branches[k], arranged);
        const Vector& v = cond.amplitudes();
        const MachineRule& rule = m.rules()[k];
        const Complex lambda = rule.input.amplitudes().dot(v);
        const double miss = (v - lambda * rule.input.amplitudes()).norm();
        if (miss >= tol) {
            throw UncoveredTerm("branch " + std::to_string(k) + " is not proportional to declared input " +
                                std::to_string(k) + " (miss " + fmt(miss) + ")");
        }
        rebuilt += tensor(branches[k], cond).amplitudes();
        result += tensor(branches[k], Ket(landing, lambda * rule.output.amplitudes())).amplitudes();
    }
    const double outside = (arranged.amplitudes() - rebuilt).norm();
    if (outside >= tol * std::max(1.0, state.norm())) {
        throw UncoveredTerm("state has weight " + fmt(outside) + " outside the branch span");
    }
    Ket out(spectators.concat(landing), std::move(result));
    if (landing == acted_sig) {
        out = out.permuted(state.signature().labels());
    }
    return finish(std::move(out), renormalize);
}

// ---------------------------------------------------------------------------
// Presets

namespace {

Ket on(const Ket& qubit, const std::string& label) { return qubit.relabeled({label}); }

const std::string& single_label(const Ket& k, const char* what) {
    if (k.signature().size() != 1) {
        throw SignatureError(std::string(what) + " must live on a single factor, got " + k.signature().to_string());
    }
    return k.signature()[0].label;
}

void require_same_signature(const std::pair<Ket, Ket>& p, const char* what) {
    if (p.first.signature() != p.second.signature()) {
        throw SignatureError(std::string(what) + ": pair members over different signatures");
    }
}

}  // namespace

std::pair<Ket, Ket> passthrough_cross_outputs(const BasisPair& psi, const BasisPair& alpha, const Ket& ancilla_ready,
                                              const WishfulLabels& labels) {
    return {tensor({on(psi.primary, labels.psi), on(alpha.complement, labels.alpha), ancilla_ready}),
            tensor({on(psi.complement, labels.psi), on(alpha.primary, labels.alpha), ancilla_ready})};
}

std::pair<Ket, Ket> swapped_cross_outputs(const BasisPair& psi, const BasisPair& alpha, const Ket& ancilla_ready,
                                          const WishfulLabels& labels) {
    return {tensor({on(alpha.complement, labels.psi), on(psi.primary, labels.alpha), ancilla_ready}),
            tensor({on(alpha.primary, labels.psi), on(psi.complement, labels.alpha), ancilla_ready})};
}

std::pair<Ket, Ket> marker_ancilla_outputs(const std::string& label, std::size_t dim, Complex overlap) {
    if (dim < 3) {
        throw DomainError("marker ancilla outputs need dimension >= 3, got " + std::to_string(dim));
    }
    return kets_with_overlap(overlap, dim, label, 1);
}

MachineSpec preset_wishful_cloner(const BasisPair& psi, const BasisPair& alpha, const std::pair<Ket, Ket>& cross_outputs,
                                  const std::pair<Ket, Ket>& ancilla_outputs, const Ket& ancilla_ready,
                                  const WishfulLabels& labels) {
    single_label(ancilla_ready, "ancilla ready state");
    require_same_signature(ancilla_outputs, "ancilla outputs");
    if (ancilla_outputs.first.signature() != ancilla_ready.signature()) {
        throw SignatureError("ancilla outputs must share the ready state's register " +
                             ancilla_ready.signature().to_string());
    }
    const Signature sig = Signature{{labels.psi, 2}, {labels.alpha, 2}}.concat(ancilla_ready.signature());
    if (cross_outputs.first.signature() != sig || cross_outputs.second.signature() != sig) {
        throw SignatureError("cross outputs must be over " + sig.to_string());
    }
    const Ket p = on(psi.primary, labels.psi);
    const Ket pb = on(psi.complement, labels.psi);
    const Ket a = on(alpha.primary, labels.alpha);
    const Ket ab = on(alpha.complement, labels.alpha);
    std::vector<MachineRule> rules{
        {tensor({p, a, ancilla_ready}), tensor({p, on(psi.primary, labels.alpha), ancilla_outputs.first})},
        {tensor({pb, ab, ancilla_ready}), tensor({pb, on(psi.complement, labels.alpha), ancilla_outputs.second})},
        {tensor({p, ab, ancilla_ready}), cross_outputs.first},
        {tensor({pb, a, ancilla_ready}), cross_outputs.second},
    };
    return MachineSpec(sig, sig, std::move(rules), MachineMode::Termwise);
}

MachineSpec preset_strong_cloner(const std::pair<Ket, Ket>& psi, const std::pair<Ket, Ket>& alpha,
                                 const std::pair<Ket, Ket>& ancilla_out, std::size_t ancilla_dim,
                                 const ClonerLabels& labels) {
    require_same_signature(psi, "psi pair");
    require_same_signature(alpha, "alpha pair");
    require_same_signature(ancilla_out, "ancilla output pair");
    single_label(psi.first, "psi pair");
    single_label(alpha.first, "alpha pair");
    single_label(ancilla_out.first, "ancilla output pair");
    const std::size_t d = psi.first.dim();

    const Ket blank = Ket::basis(labels.copy, d, 0);
    const Ket ready = Ket::basis(labels.ancilla, ancilla_dim, 0);
    const Signature in_sig = psi.first.signature()
                                 .concat(blank.signature())
                                 .concat(alpha.first.signature())
                                 .concat(ready.signature());
    const Signature out_sig = psi.first.signature().concat(blank.signature()).concat(ancilla_out.first.signature());
    if (out_sig.total_dim() < in_sig.total_dim()) {
        throw DomainError("ancilla output register of dimension " + std::to_string(ancilla_out.first.dim()) +
                          " cannot hold alpha and C (needs " + std::to_string(alpha.first.dim() * ancilla_dim) + ")");
    }
    auto rule = [&](const Ket& p, const Ket& a, const Ket& c) {
        return MachineRule{tensor({p, blank, a, ready}), tensor({p, p.relabeled({labels.copy}), c})};
    };
    return MachineSpec(in_sig, out_sig,
                       {rule(psi.first, alpha.first, ancilla_out.first), rule(psi.second, alpha.second, ancilla_out.second)},
                       MachineMode::LinearExtension);
}

MachineSpec preset_deleter(const std::pair<Ket, Ket>& psi, const std::pair<Ket, Ket>& ancilla_out,
                           const std::string& copy_label) {
    require_same_signature(psi, "psi pair");
    require_same_signature(ancilla_out, "ancilla output pair");
    single_label(psi.first, "psi pair");
    const std::string& anc = single_label(ancilla_out.first, "ancilla output pair");
    const std::size_t d = psi.first.dim();
    const Ket blank = Ket::basis(copy_label, d, 0);
    const Ket ready = Ket::basis(anc, ancilla_out.first.dim(), 0);
    const Signature sig = psi.first.signature().concat(blank.signature()).concat(ready.signature());
    auto rule = [&](const Ket& p, const Ket& a) {
        return MachineRule{tensor({p, p.relabeled({copy_label}), ready}), tensor({p, blank, a})};
    };
    return MachineSpec(sig, sig, {rule(psi.first, ancilla_out.first), rule(psi.second, ancilla_out.second)},
                       MachineMode::LinearExtension);
}

}  // namespace nclab
