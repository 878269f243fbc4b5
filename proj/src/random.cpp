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

#include "nclab/random.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace nclab {

namespace {

Complex gaussian(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    Matrix m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) {
            m(r, c) = gaussian(rng);
        }
    }
    return m;
}

}  // namespace

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Ket random_ket(const Signature& sig, Rng& rng) {
    Vector v = gaussian_matrix(static_cast<Eigen::Index>(sig.total_dim()), 1, rng).col(0);
    return Ket(sig, v / v.norm());
}

Matrix random_unitary(Eigen::Index n, Rng& rng) {
    const Matrix z = gaussian_matrix(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0.0) {
            q.col(k) *= r(k, k) / mag;
        }
    }
    return q;
}

Matrix random_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    return random_unitary(rows, rng).leftCols(cols);
}

Matrix random_hermitian(Eigen::Index n, Rng& rng) {
    const Matrix z = gaussian_matrix(n, n, rng);
    return (z + z.adjoint()) / 2.0;
}

BasisPair random_basis(Rng& rng, const std::string& label) {
    const double theta = std::acos(uniform(rng, -1.0, 1.0));
    const double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    return qubit_basis(theta, phi, label);
}

}  // namespace nclab
