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

#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "nclab/tensor.hpp"

namespace nclab::testing {

inline ::testing::AssertionResult MatrixNear(const Matrix& a, const Matrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return ::testing::AssertionFailure() << "shape " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
                                             << b.cols();
    }
    const double d = max_abs_diff(a, b);
    if (d < tol) {
        return ::testing::AssertionSuccess();
    }
    return ::testing::AssertionFailure() << "max entry deviation " << d << " >= " << tol << "\n" << a << "\nvs\n" << b;
}

inline ::testing::AssertionResult ComplexNear(Complex a, Complex b, double tol) {
    if (std::abs(a - b) < tol) {
        return ::testing::AssertionSuccess();
    }
    return ::testing::AssertionFailure() << a << " vs " << b << " (|diff| " << std::abs(a - b) << ")";
}

inline Ket qubit(const std::string& label, Complex a0, Complex a1) {
    Vector v(2);
    v << a0, a1;
    return Ket(Signature{{label, 2}}, v);
}

}  // namespace nclab::testing
