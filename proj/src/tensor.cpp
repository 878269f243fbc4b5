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

#include "nclab/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "nclab/linalg.hpp"

namespace nclab {

namespace {

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// For the factor order `perm` (new position j holds old entry perm[j]),
// entry n of the result is the old flat index feeding new flat index n.
std::vector<std::size_t> permutation_map(const Signature& sig, const std::vector<std::size_t>& perm) {
    const std::size_t n = sig.size();
    std::vector<std::size_t> old_stride(n, 1);
    for (std::size_t i = n; i-- > 1;) {
        old_stride[i - 1] = old_stride[i] * sig[i].dim;
    }
    std::vector<std::size_t> new_dims(n);
    for (std::size_t j = 0; j < n; ++j) {
        new_dims[j] = sig[perm[j]].dim;
    }
    const std::size_t total = sig.total_dim();
    std::vector<std::size_t> map(total);
    std::vector<std::size_t> digits(n, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t old = 0;
        for (std::size_t j = 0; j < n; ++j) {
            old += digits[j] * old_stride[perm[j]];
        }
        map[idx] = old;
        for (std::size_t j = n; j-- > 0;) {
            if (++digits[j] < new_dims[j]) {
                break;
            }
            digits[j] = 0;
        }
    }
    return map;
}

std::vector<std::size_t> positions_of(const Signature& sig, const Labels& order) {
    std::vector<std::size_t> perm;
    perm.reserve(order.size());
    for (const auto& label : order) {
        perm.push_back(sig.index_of(label));
    }
    return perm;
}

void require_distinct(const Labels& labels, const char* what) {
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second) {
            throw SignatureError(std::string(what) + ": duplicate label '" + l + "'");
        }
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(std::initializer_list<Subsystem> entries)
    : Signature(std::vector<Subsystem>(entries)) {}

Signature::Signature(std::vector<Subsystem> entries) : entries_(std::move(entries)) {
    std::set<std::string> seen;
    for (const auto& e : entries_) {
        if (e.label.empty()) {
            throw SignatureError("empty subsystem label");
        }
        if (e.dim < 2) {
            throw SignatureError("subsystem '" + e.label + "' has dimension " + std::to_string(e.dim) +
                                 "; at least 2 required");
        }
        if (!seen.insert(e.label).second) {
            throw SignatureError("duplicate label '" + e.label + "'");
        }
    }
}

std::size_t Signature::total_dim() const {
    std::size_t d = 1;
    for (const auto& e : entries_) {
        d *= e.dim;
    }
    return d;
}

Labels Signature::labels() const {
    Labels out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) {
        out.push_back(e.label);
    }
    return out;
}

bool Signature::contains(const std::string& label) const { return find(label).has_value(); }

std::optional<std::size_t> Signature::find(const std::string& label) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].label == label) {
            return i;
        }
    }
    return std::nullopt;
}

std::size_t Signature::index_of(const std::string& label) const {
    if (auto i = find(label)) {
        return *i;
    }
    throw SignatureError("unknown label '" + label + "' in signature " + to_string());
}

Signature Signature::concat(const Signature& other) const {
    std::vector<Subsystem> all = entries_;
    for (const auto& e : other.entries_) {
        if (contains(e.label)) {
            throw SignatureError("duplicate label '" + e.label + "' in tensor product");
        }
        all.push_back(e);
    }
    return Signature(std::move(all));
}

Signature Signature::select(const Labels& labels) const {
    require_distinct(labels, "select");
    std::vector<Subsystem> out;
    for (const auto& l : labels) {
        out.push_back(entries_[index_of(l)]);
    }
    return Signature(std::move(out));
}

Signature Signature::without(const Labels& labels) const {
    for (const auto& l : labels) {
        index_of(l);
    }
    std::vector<Subsystem> out;
    for (const auto& e : entries_) {
        if (std::find(labels.begin(), labels.end(), e.label) == labels.end()) {
            out.push_back(e);
        }
    }
    return Signature(std::move(out));
}

Signature Signature::relabeled(const Labels& labels) const {
    if (labels.size() != entries_.size()) {
        throw SignatureError("relabel: expected " + std::to_string(entries_.size()) + " labels, got " +
                             std::to_string(labels.size()));
    }
    std::vector<Subsystem> out = entries_;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].label = labels[i];
    }
    return Signature(std::move(out));
}

std::string Signature::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        os << (i ? ", " : "") << entries_[i].label << ':' << entries_[i].dim;
    }
    os << ')';
    return os.str();
}

// ---------------------------------------------------------------------------
// Ket

Ket::Ket(Signature signature, Vector amplitudes)
    : signature_(std::move(signature)), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != signature_.total_dim()) {
        throw SignatureError("ket over " + signature_.to_string() + " needs " +
                             std::to_string(signature_.total_dim()) + " amplitudes, got " +
                             std::to_string(amplitudes_.size()));
    }
}

Ket Ket::basis(Signature signature, std::size_t index) {
    const std::size_t d = signature.total_dim();
    if (index >= d) {
        throw DomainError("basis index " + std::to_string(index) + " out of range for dimension " +
                          std::to_string(d));
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(d));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return Ket(std::move(signature), std::move(v));
}

Ket Ket::basis(const std::string& label, std::size_t dim, std::size_t index) {
    return basis(Signature{{label, dim}}, index);
}

bool Ket::is_normalized(double tol) const { return std::abs(norm() - 1.0) < tol; }

Ket Ket::normalized() const {
    const double n = norm();
    if (n == 0.0) {
        throw DomainError("cannot normalize a zero ket");
    }
    return Ket(signature_, amplitudes_ / n);
}

Ket Ket::relabeled(const Labels& labels) const { return Ket(signature_.relabeled(labels), amplitudes_); }

Ket Ket::permuted(const Labels& order) const {
    if (order.size() != signature_.size()) {
        throw SignatureError("permutation must name all " + std::to_string(signature_.size()) + " factors of " +
                             signature_.to_string());
    }
    Signature target = signature_.select(order);
    const auto map = permutation_map(signature_, positions_of(signature_, order));
    Vector v(amplitudes_.size());
    for (std::size_t i = 0; i < map.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = amplitudes_[static_cast<Eigen::Index>(map[i])];
    }
    return Ket(std::move(target), std::move(v));
}

Ket operator+(const Ket& a, const Ket& b) {
    if (a.signature_ != b.signature_) {
        throw SignatureError("cannot add kets over " + a.signature_.to_string() + " and " + b.signature_.to_string());
    }
    return Ket(a.signature_, a.amplitudes_ + b.amplitudes_);
}

Ket operator-(const Ket& a, const Ket& b) { return a + (-b); }

Ket operator*(Complex s, const Ket& k) { return Ket(k.signature_, s * k.amplitudes_); }

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Signature signature, Matrix entries, double tol)
    : signature_(std::move(signature)), entries_(std::move(entries)) {
    const auto d = static_cast<Eigen::Index>(signature_.total_dim());
    if (entries_.rows() != d || entries_.cols() != d) {
        throw SignatureError("density matrix over " + signature_.to_string() + " must be " + std::to_string(d) +
                             "x" + std::to_string(d));
    }
    const double herm = max_abs_diff(entries_, entries_.adjoint());
    if (herm > tol) {
        throw DomainError("density matrix not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    const double tr = entries_.trace().real();
    if (std::abs(tr - 1.0) > tol) {
        throw DomainError("density matrix trace " + std::to_string(tr) + " differs from 1");
    }
    const Spectrum s = eig_hermitian(entries_, tol);
    if (s.values[s.values.size() - 1] < -tol) {
        throw DomainError("density matrix has negative eigenvalue " + std::to_string(s.values[s.values.size() - 1]));
    }
}

DensityMatrix::DensityMatrix(Trusted, Signature signature, Matrix entries)
    : signature_(std::move(signature)), entries_(std::move(entries)) {}

DensityMatrix DensityMatrix::maximally_mixed(Signature signature) {
    const auto d = static_cast<Eigen::Index>(signature.total_dim());
    return DensityMatrix(std::move(signature), Matrix::Identity(d, d) / static_cast<double>(d));
}

// ---------------------------------------------------------------------------
// Free operations

Ket tensor(const Ket& a, const Ket& b) {
    Signature sig = a.signature().concat(b.signature());
    const auto na = a.amplitudes().size();
    const auto nb = b.amplitudes().size();
    Vector v(na * nb);
    for (Eigen::Index i = 0; i < na; ++i) {
        v.segment(i * nb, nb) = a.amplitudes()[i] * b.amplitudes();
    }
    return Ket(std::move(sig), std::move(v));
}

Ket tensor(std::initializer_list<Ket> factors) {
    if (factors.size() == 0) {
        throw SignatureError("tensor of an empty factor list");
    }
    auto it = factors.begin();
    Ket out = *it++;
    for (; it != factors.end(); ++it) {
        out = tensor(out, *it);
    }
    return out;
}

Complex inner(const Ket& a, const Ket& b) {
    if (a.signature() != b.signature()) {
        throw SignatureError("inner product of kets over " + a.signature().to_string() + " and " +
                             b.signature().to_string());
    }
    return a.amplitudes().dot(b.amplitudes());
}

DensityMatrix density_of(const Ket& k) {
    const double n2 = k.amplitudes().squaredNorm();
    if (n2 == 0.0) {
        throw DomainError("density_of: zero-norm ket");
    }
    Matrix rho = k.amplitudes() * k.amplitudes().adjoint() / n2;
    return DensityMatrix(DensityMatrix::Trusted{}, k.signature(), std::move(rho));
}

DensityMatrix mixture_of(const std::vector<Ket>& branches) {
    if (branches.empty()) {
        throw DomainError("mixture_of: no branches");
    }
    const Signature& sig = branches.front().signature();
    const auto d = static_cast<Eigen::Index>(sig.total_dim());
    Matrix rho = Matrix::Zero(d, d);
    double weight = 0.0;
    for (const auto& b : branches) {
        if (b.signature() != sig) {
            throw SignatureError("mixture_of: branch over " + b.signature().to_string() + ", expected " +
                                 sig.to_string());
        }
        rho.noalias() += b.amplitudes() * b.amplitudes().adjoint();
        weight += b.amplitudes().squaredNorm();
    }
    if (weight == 0.0) {
        throw DomainError("mixture_of: every branch is zero");
    }
    return DensityMatrix(DensityMatrix::Trusted{}, sig, rho / weight);
}

DensityMatrix partial_trace(const DensityMatrix& rho, const Labels& keep) {
    if (keep.empty()) {
        throw SignatureError("partial_trace: empty keep-set");
    }
    const Signature& sig = rho.signature();
    require_distinct(keep, "partial_trace");
    std::vector<std::size_t> kept_pos;
    for (const auto& l : keep) {
        kept_pos.push_back(sig.index_of(l));
    }
    std::sort(kept_pos.begin(), kept_pos.end());
    std::vector<std::size_t> perm = kept_pos;
    for (std::size_t i = 0; i < sig.size(); ++i) {
        if (std::find(kept_pos.begin(), kept_pos.end(), i) == kept_pos.end()) {
            perm.push_back(i);
        }
    }
    std::vector<Subsystem> kept;
    for (auto p : kept_pos) {
        kept.push_back(sig[p]);
    }
    Signature out_sig(std::move(kept));

    const std::size_t dk = out_sig.total_dim();
    const std::size_t dt = sig.total_dim() / dk;
    // map[k * dt + t] is the original flat index of (kept k, traced t).
    const auto map = permutation_map(sig, perm);
    const Matrix& m = rho.matrix();
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (std::size_t r = 0; r < dk; ++r) {
        for (std::size_t c = 0; c < dk; ++c) {
            Complex acc = 0.0;
            for (std::size_t t = 0; t < dt; ++t) {
                acc += m(static_cast<Eigen::Index>(map[r * dt + t]), static_cast<Eigen::Index>(map[c * dt + t]));
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
        }
    }
    return DensityMatrix(DensityMatrix::Trusted{}, std::move(out_sig), std::move(out));
}

Ket contract(const Ket& bra, const Ket& state) {
    const Labels bra_labels = bra.signature().labels();
    const Signature& sig = state.signature();
    for (const auto& l : bra_labels) {
        const auto& e = sig[sig.index_of(l)];
        if (e.dim != bra.signature()[bra.signature().index_of(l)].dim) {
            throw SignatureError("contract: dimension mismatch on '" + l + "'");
        }
    }
    Signature rest = sig.without(bra_labels);
    Labels order = rest.labels();
    order.insert(order.end(), bra_labels.begin(), bra_labels.end());
    const Ket arranged = state.permuted(order);
    const auto rows = static_cast<Eigen::Index>(rest.total_dim());
    const auto cols = static_cast<Eigen::Index>(bra.dim());
    Eigen::Map<const RowMajorMatrix> psi(arranged.amplitudes().data(), rows, cols);
    Vector v = psi * bra.amplitudes().conjugate();
    return Ket(std::move(rest), std::move(v));
}

Ket apply_local(const Matrix& op, const Signature& output, const Ket& state, const Labels& acted) {
    const Signature& sig = state.signature();
    const Signature acted_sig = sig.select(acted);
    if (static_cast<std::size_t>(op.cols()) != acted_sig.total_dim() ||
        static_cast<std::size_t>(op.rows()) != output.total_dim()) {
        throw SignatureError("operator of shape " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
                             " cannot map " + acted_sig.to_string() + " to " + output.to_string());
    }
    Signature spectators = sig.without(acted);
    Labels order = spectators.labels();
    order.insert(order.end(), acted.begin(), acted.end());
    const Ket arranged = state.permuted(order);

    const auto rows = static_cast<Eigen::Index>(spectators.total_dim());
    Eigen::Map<const RowMajorMatrix> psi(arranged.amplitudes().data(), rows, op.cols());
    RowMajorMatrix phi = psi * op.transpose();
    Vector v = Eigen::Map<const Vector>(phi.data(), phi.size());
    Ket out(spectators.concat(output), std::move(v));
    if (output == acted_sig) {
        return out.permuted(sig.labels());
    }
    return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw SignatureError("max_abs_diff: shape mismatch");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace nclab
