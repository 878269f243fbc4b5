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

#include "nclab/states.hpp"

#include <cmath>
#include <numbers>

namespace nclab {

BasisPair qubit_basis(double theta, double phi, const std::string& label) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
        throw DomainError("qubit_basis: theta " + std::to_string(theta) + " outside [0, pi]");
    }
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) {
        throw DomainError("qubit_basis: phi " + std::to_string(phi) + " outside [0, 2 pi)");
    }
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const Complex e = std::polar(1.0, phi);
    const Signature sig{{label, 2}};
    Vector p(2), q(2);
    p << c, e * s;
    q << -std::conj(e) * s, c;
    return BasisPair{theta, phi, Ket(sig, std::move(p)), Ket(sig, std::move(q))};
}

Ket singlet(const BasisPair& basis, const std::string& first, const std::string& second) {
    if (first == second) {
        throw SignatureError("singlet: duplicate label '" + first + "'");
    }
    const Ket p1 = basis.primary.relabeled({first});
    const Ket c1 = basis.complement.relabeled({first});
    const Ket p2 = basis.primary.relabeled({second});
    const Ket c2 = basis.complement.relabeled({second});
    return Complex(1.0 / std::sqrt(2.0)) * (tensor(p1, c2) - tensor(c1, p2));
}

StateFamily::StateFamily(std::vector<Ket> members, double tol) : members_(std::move(members)) {
    if (members_.empty()) {
        throw DomainError("state family must not be empty");
    }
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i].signature() != members_.front().signature()) {
            throw SignatureError("state family member " + std::to_string(i) + " is over " +
                                 members_[i].signature().to_string() + ", expected " +
                                 members_.front().signature().to_string());
        }
        if (!members_[i].is_normalized(tol)) {
            throw DomainError("state family member " + std::to_string(i) + " has norm " +
                              std::to_string(members_[i].norm()));
        }
    }
}

Matrix gram(const StateFamily& f) {
    const auto n = static_cast<Eigen::Index>(f.size());
    Matrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            g(i, j) = inner(f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>(j)]);
        }
    }
    return g;
}

bool has_orthogonal_pair(const StateFamily& f, double tol) {
    const Matrix g = gram(f);
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < g.cols(); ++j) {
            if (std::abs(g(i, j)) < tol) {
                return true;
            }
        }
    }
    return false;
}

std::pair<Ket, Ket> kets_with_overlap(Complex target, std::size_t dimension, const std::string& label,
                                      std::size_t first_index) {
    const double mod = std::abs(target);
    if (mod > 1.0 + 1e-12) {
        throw DomainError("kets_with_overlap: |target| = " + std::to_string(mod) + " exceeds 1");
    }
    if (dimension < 2 || first_index + 1 >= dimension) {
        throw DomainError("kets_with_overlap: needs two free levels starting at " + std::to_string(first_index) +
                          " in dimension " + std::to_string(dimension));
    }
    const auto k = static_cast<Eigen::Index>(first_index);
    const Signature sig{{label, dimension}};
    Ket first = Ket::basis(sig, first_index);
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dimension));
    if (mod >= 1.0) {
        v[k] = target / mod;
    } else {
        v[k] = target;
        v[k + 1] = std::sqrt(1.0 - mod * mod);
    }
    return {std::move(first), Ket(sig, std::move(v))};
}

}  // namespace nclab
