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

#include <Eigen/Dense>

#include "nclab/tensor.hpp"

namespace nclab {

/// Eigenvalues sorted descending; column k of `vectors` pairs with
/// `values[k]`.
struct Spectrum {
    Eigen::VectorXd values;
    Matrix vectors;
};

struct JacobiOptions {
    double off_diagonal_threshold = 1e-14;
    int max_sweeps = 100;
};

/// Eigendecomposition of a Hermitian matrix.
///
/// 2x2 inputs use the closed form (tr +- sqrt(tr^2 - 4 det)) / 2. Larger
/// inputs run cyclic complex Jacobi until the off-diagonal Frobenius norm
/// drops below `off_diagonal_threshold` times the matrix scale. Throws
/// NotHermitian when |H - H^dagger| exceeds `hermitian_tol` anywhere.
Spectrum eig_hermitian(const Matrix& h, double hermitian_tol = kAssertTolerance,
                       const JacobiOptions& options = {});

/// max |H - V diag(lambda) V^dagger|.
double reconstruction_residual(const Matrix& h, const Spectrum& s);

/// Half the sum of |eigenvalues| of rho - sigma.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Von Neumann entropy in bits, with 0 log 0 taken as 0.
double entropy(const DensityMatrix& rho);

/// Binary entropy h(p) in bits.
double binary_entropy(double p);

}  // namespace nclab
