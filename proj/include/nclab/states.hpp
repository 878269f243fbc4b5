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

#include <string>
#include <utility>
#include <vector>

#include "nclab/tensor.hpp"

namespace nclab {

/// Orthonormal qubit pair parametrized by Bloch angles:
///   primary    =  cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
///   complement = -e^{-i phi} sin(theta/2)|0> + cos(theta/2)|1>
struct BasisPair {
    double theta = 0.0;
    double phi = 0.0;
    Ket primary;
    Ket complement;
};

/// theta in [0, pi], phi in [0, 2 pi); throws DomainError otherwise.
BasisPair qubit_basis(double theta, double phi, const std::string& label = "q");

/// (|p>|c> - |c>|p>) / sqrt(2) over (first, second).
Ket singlet(const BasisPair& basis, const std::string& first, const std::string& second);

/// Non-empty ordered list of normalized kets over one shared signature.
class StateFamily {
 public:
    explicit StateFamily(std::vector<Ket> members, double tol = kAssertTolerance);

    const std::vector<Ket>& members() const { return members_; }
    const Ket& operator[](std::size_t i) const { return members_[i]; }
    std::size_t size() const { return members_.size(); }
    const Signature& signature() const { return members_.front().signature(); }

 private:
    std::vector<Ket> members_;
};

/// G[i][j] = <member_i | member_j>.
Matrix gram(const StateFamily& f);

/// True iff some off-diagonal Gram entry has modulus below `tol`.
bool has_orthogonal_pair(const StateFamily& f, double tol = kAssertTolerance);

/// Two normalized kets over a single factor with <first|second> = target:
/// first = e_k, second = target e_k + sqrt(1 - |target|^2) e_{k+1}, where k is
/// `first_index`.
std::pair<Ket, Ket> kets_with_overlap(Complex target, std::size_t dimension, const std::string& label,
                                      std::size_t first_index = 0);

}  // namespace nclab
