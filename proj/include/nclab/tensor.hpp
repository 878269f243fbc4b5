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

// Dense kets and density matrices over labeled tensor-product spaces.
//
// Amplitudes are indexed row-major over the signature's entry order: the
// last entry varies fastest. Every value type here is immutable once built.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nclab/error.hpp"

namespace nclab {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Labels = std::vector<std::string>;

/// Default tolerance for scientific assertions.
inline constexpr double kAssertTolerance = 1e-10;
/// Default tolerance for linear-algebra residuals.
inline constexpr double kResidualTolerance = 1e-12;

struct Subsystem {
    std::string label;
    std::size_t dim = 2;

    friend bool operator==(const Subsystem&, const Subsystem&) = default;
};

/// Ordered list of labeled tensor factors. Labels are unique and every
/// factor has dimension at least 2.
class Signature {
 public:
    Signature() = default;
    Signature(std::initializer_list<Subsystem> entries);
    explicit Signature(std::vector<Subsystem> entries);

    const std::vector<Subsystem>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const Subsystem& operator[](std::size_t i) const { return entries_[i]; }

    std::size_t total_dim() const;
    Labels labels() const;
    bool contains(const std::string& label) const;
    std::optional<std::size_t> find(const std::string& label) const;
    /// Position of `label`; throws SignatureError naming it when absent.
    std::size_t index_of(const std::string& label) const;

    /// Entries of `other` appended after ours. Throws on a shared label.
    Signature concat(const Signature& other) const;
    /// The named entries, in the order given.
    Signature select(const Labels& labels) const;
    /// Our entries minus the named ones, original order kept.
    Signature without(const Labels& labels) const;
    Signature relabeled(const Labels& labels) const;

    std::string to_string() const;

    friend bool operator==(const Signature&, const Signature&) = default;

 private:
    std::vector<Subsystem> entries_;
};

/// Complex amplitude vector over a signature. Normalization is not enforced;
/// callers that need a normalized ket check `is_normalized`.
class Ket {
 public:
    Ket(Signature signature, Vector amplitudes);

    /// Computational basis state |index> of the given signature.
    static Ket basis(Signature signature, std::size_t index);
    /// Single-factor computational basis state.
    static Ket basis(const std::string& label, std::size_t dim, std::size_t index);

    const Signature& signature() const { return signature_; }
    const Vector& amplitudes() const { return amplitudes_; }
    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    Complex operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

    double norm() const { return amplitudes_.norm(); }
    bool is_normalized(double tol = kAssertTolerance) const;
    /// Throws DomainError for a zero vector.
    Ket normalized() const;

    Ket relabeled(const Labels& labels) const;
    /// Reorders tensor factors so that the result's entries follow `order`.
    Ket permuted(const Labels& order) const;

    Ket operator-() const { return Ket(signature_, -amplitudes_); }
    friend Ket operator+(const Ket& a, const Ket& b);
    friend Ket operator-(const Ket& a, const Ket& b);
    friend Ket operator*(Complex s, const Ket& k);

 private:
    Signature signature_;
    Vector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite operator over a signature.
class DensityMatrix {
 public:
    /// Validates all three invariants within `tol`; throws DomainError.
    DensityMatrix(Signature signature, Matrix entries, double tol = kAssertTolerance);

    const Signature& signature() const { return signature_; }
    const Matrix& matrix() const { return entries_; }
    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    Complex operator()(std::size_t r, std::size_t c) const {
        return entries_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }

    /// Maximally mixed state I/d.
    static DensityMatrix maximally_mixed(Signature signature);

 private:
    struct Trusted {};
    DensityMatrix(Trusted, Signature signature, Matrix entries);

    friend DensityMatrix density_of(const Ket& k);
    friend DensityMatrix partial_trace(const DensityMatrix& rho, const Labels& keep);
    friend DensityMatrix mixture_of(const std::vector<Ket>& branches);

    Signature signature_;
    Matrix entries_;
};

/// Kronecker product over the concatenated signature.
Ket tensor(const Ket& a, const Ket& b);
Ket tensor(std::initializer_list<Ket> factors);

/// <a|b>, conjugate-linear in `a`. Signatures must match exactly.
Complex inner(const Ket& a, const Ket& b);

/// Projector onto a nonzero ket, scaled to unit trace.
DensityMatrix density_of(const Ket& k);

/// Sum of |v><v| over unnormalized branch vectors sharing one signature,
/// divided by the total weight. Throws when every branch is zero.
DensityMatrix mixture_of(const std::vector<Ket>& branches);

/// Reduced state on `keep`; the result lists the kept labels in their
/// original order.
DensityMatrix partial_trace(const DensityMatrix& rho, const Labels& keep);

/// Partial inner product <bra|state> over bra's labels. The result lives on
/// the state's remaining labels in their original order.
Ket contract(const Ket& bra, const Ket& state);

/// Applies `op` (rows: output signature, columns: acted factors in the
/// listed order) to the named factors of `state`. When `output` equals the
/// acted sub-signature the original factor order is restored; otherwise the
/// output factors follow the untouched ones.
Ket apply_local(const Matrix& op, const Signature& output, const Ket& state, const Labels& acted);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace nclab
