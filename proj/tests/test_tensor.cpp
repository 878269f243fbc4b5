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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "nclab/linalg.hpp"
#include "nclab/random.hpp"
#include "nclab/states.hpp"
#include "test_util.hpp"

using namespace nclab;
using nclab::testing::ComplexNear;
using nclab::testing::MatrixNear;
using nclab::testing::qubit;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Plain Kronecker product of raw amplitude vectors, independent of Ket.
Vector kron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        for (Eigen::Index j = 0; j < b.size(); ++j) {
            out[i * b.size() + j] = a[i] * b[j];
        }
    }
    return out;
}

}  // namespace

TEST(Signature, RejectsDuplicateLabelsAndTinyFactors) {
    EXPECT_THROW((Signature{{"a", 2}, {"a", 3}}), SignatureError);
    EXPECT_THROW((Signature{{"a", 1}}), SignatureError);
    const Signature s{{"a", 2}, {"b", 3}};
    EXPECT_EQ(s.total_dim(), 6u);
    EXPECT_EQ(s.index_of("b"), 1u);
    try {
        s.index_of("zz");
        FAIL();
    } catch (const SignatureError& e) {
        EXPECT_NE(std::string(e.what()).find("zz"), std::string::npos);
    }
}

TEST(Tensor, ComputationalBasisProduct) {
    const Ket k = tensor(Ket::basis("q0", 2, 0), Ket::basis("q1", 2, 1));
    EXPECT_EQ(k.signature(), (Signature{{"q0", 2}, {"q1", 2}}));
    Vector expected(4);
    expected << 0, 1, 0, 0;
    EXPECT_TRUE(MatrixNear(k.amplitudes(), expected, 1e-15));
}

TEST(Tensor, PlusPlusIsUniform) {
    const Ket k = tensor(qubit("a", kInvSqrt2, kInvSqrt2), qubit("b", kInvSqrt2, kInvSqrt2));
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(k[i].real(), 0.5, 1e-15);
        EXPECT_NEAR(k[i].imag(), 0.0, 1e-15);
    }
}

TEST(Tensor, DuplicateLabelNamed) {
    try {
        tensor(Ket::basis("x", 2, 0), Ket::basis("x", 2, 1));
        FAIL();
    } catch (const SignatureError& e) {
        EXPECT_NE(std::string(e.what()).find("'x'"), std::string::npos);
    }
}

TEST(Tensor, NormIsMultiplicative) {
    const Ket a(Signature{{"a", 2}}, Vector::Constant(2, Complex(1.0, 1.0)));
    const Ket b(Signature{{"b", 3}}, Vector::Constant(3, Complex(0.5, 0.0)));
    EXPECT_NEAR(tensor(a, b).norm(), a.norm() * b.norm(), 1e-14);
}

TEST(Tensor, TwoSingletsMatchTermwiseExpansion) {
    const BasisPair x = qubit_basis(0.7, 1.1);
    const BasisPair y = qubit_basis(2.3, 4.0);
    const Ket joint = tensor(singlet(x, "Apsi", "Bpsi"), singlet(y, "Aalpha", "Balpha"));

    // (p c' - c p')(a b' - b a') / 2 with factor order (Apsi, Bpsi, Aalpha, Balpha)
    const Vector& p = x.primary.amplitudes();
    const Vector& c = x.complement.amplitudes();
    const Vector& a = y.primary.amplitudes();
    const Vector& b = y.complement.amplitudes();
    const Vector expected = 0.5 * (kron(kron(kron(p, c), a), b) - kron(kron(kron(p, c), b), a) -
                                   kron(kron(kron(c, p), a), b) + kron(kron(kron(c, p), b), a));
    EXPECT_TRUE(MatrixNear(joint.amplitudes(), expected, 1e-15));
}

TEST(Inner, BasicValues) {
    EXPECT_TRUE(ComplexNear(inner(Ket::basis("q", 2, 0), Ket::basis("q", 2, 0)), 1.0, 1e-15));
    EXPECT_TRUE(ComplexNear(inner(Ket::basis("q", 2, 0), Ket::basis("q", 2, 1)), 0.0, 1e-15));
    const double theta = 1.2;
    EXPECT_TRUE(ComplexNear(inner(qubit_basis(theta, 0).primary, Ket::basis("q", 2, 0)), std::cos(theta / 2), 1e-15));
}

TEST(Inner, ConjugateLinearInFirstArgument) {
    const Ket a = qubit("q", 1.0, 0.0);
    const Ket b = qubit("q", kInvSqrt2, kInvSqrt2);
    const Complex s(0.0, 2.0);
    EXPECT_TRUE(ComplexNear(inner(s * a, b), std::conj(s) * inner(a, b), 1e-15));
    EXPECT_TRUE(ComplexNear(inner(a, s * b), s * inner(a, b), 1e-15));
}

TEST(Inner, SignatureMismatchRejected) {
    EXPECT_THROW(inner(Ket::basis("q", 2, 0), Ket::basis("r", 2, 0)), SignatureError);
}

TEST(DensityOf, Projectors) {
    EXPECT_TRUE(MatrixNear(density_of(Ket::basis("q", 2, 0)).matrix(), Eigen::Vector2cd(1, 0).asDiagonal().toDenseMatrix(),
                           1e-15));
    EXPECT_TRUE(MatrixNear(density_of(qubit("q", kInvSqrt2, kInvSqrt2)).matrix(), Matrix::Constant(2, 2, 0.5), 1e-15));
    EXPECT_THROW(density_of(Ket(Signature{{"q", 2}}, Vector::Zero(2))), DomainError);
}

TEST(DensityMatrix, ValidatesInvariants) {
    const Signature s{{"q", 2}};
    Matrix m(2, 2);
    m << 0.5, 0.1, 0.3, 0.5;
    EXPECT_THROW(DensityMatrix(s, m), DomainError);
    m << 0.7, 0.0, 0.0, 0.7;
    EXPECT_THROW(DensityMatrix(s, m), DomainError);
    m << 1.2, 0.0, 0.0, -0.2;
    EXPECT_THROW(DensityMatrix(s, m), DomainError);
    m << 0.6, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.4;
    EXPECT_NO_THROW(DensityMatrix(s, m));
}

TEST(PartialTrace, ProductStateGivesFactor) {
    const Ket k = tensor(Ket::basis("q0", 2, 0), Ket::basis("q1", 2, 1));
    const DensityMatrix r = partial_trace(density_of(k), {"q0"});
    EXPECT_EQ(r.signature(), (Signature{{"q0", 2}}));
    EXPECT_TRUE(MatrixNear(r.matrix(), density_of(Ket::basis("q0", 2, 0)).matrix(), 1e-15));
}

TEST(PartialTrace, SingletMarginalIsMaximallyMixed) {
    const Ket s = singlet(qubit_basis(0.0, 0.0), "A", "B");
    for (const char* keep : {"A", "B"}) {
        EXPECT_TRUE(MatrixNear(partial_trace(density_of(s), {keep}).matrix(), Matrix::Identity(2, 2) / 2.0, 1e-15));
    }
}

TEST(PartialTrace, KeepsOriginalOrderRegardlessOfRequest) {
    Rng rng(5);
    const Ket a = random_ket(Signature{{"a", 2}}, rng);
    const Ket b = random_ket(Signature{{"b", 3}}, rng);
    const Ket c = random_ket(Signature{{"c", 2}}, rng);
    const DensityMatrix r = partial_trace(density_of(tensor({a, b, c})), {"c", "a"});
    EXPECT_EQ(r.signature(), (Signature{{"a", 2}, {"c", 2}}));
    EXPECT_TRUE(MatrixNear(r.matrix(), density_of(tensor(a, c)).matrix(), 1e-14));
}

TEST(PartialTrace, Errors) {
    const DensityMatrix r = density_of(tensor(Ket::basis("a", 2, 0), Ket::basis("b", 2, 0)));
    EXPECT_THROW(partial_trace(r, {}), SignatureError);
    EXPECT_THROW(partial_trace(r, {"z"}), SignatureError);
}

TEST(Permute, InverseRestoresState) {
    Rng rng(11);
    const Ket k = random_ket(Signature{{"a", 2}, {"b", 3}, {"c", 4}}, rng);
    const Ket p = k.permuted({"c", "a", "b"});
    EXPECT_EQ(p.signature(), (Signature{{"c", 4}, {"a", 2}, {"b", 3}}));
    EXPECT_TRUE(p.permuted({"a", "b", "c"}).amplitudes() == k.amplitudes());
}

TEST(Contract, ProjectsOneFactor) {
    Rng rng(3);
    const Ket a = random_ket(Signature{{"a", 2}}, rng);
    const Ket b = random_ket(Signature{{"b", 3}}, rng);
    const Ket bra = random_ket(Signature{{"a", 2}}, rng);
    const Ket r = contract(bra, tensor(a, b));
    EXPECT_EQ(r.signature(), b.signature());
    EXPECT_TRUE(MatrixNear(r.amplitudes(), inner(bra, a) * b.amplitudes(), 1e-15));
}

TEST(ApplyLocal, ActsOnNamedFactorOnly) {
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    const Ket k = tensor({Ket::basis("a", 2, 0), Ket::basis("b", 2, 0), Ket::basis("c", 2, 1)});
    const Ket out = apply_local(x, Signature{{"b", 2}}, k, {"b"});
    EXPECT_EQ(out.signature(), k.signature());
    EXPECT_TRUE(MatrixNear(out.amplitudes(),
                           tensor({Ket::basis("a", 2, 0), Ket::basis("b", 2, 1), Ket::basis("c", 2, 1)}).amplitudes(),
                           1e-15));
}

// ---------------------------------------------------------------------------
// Properties over seeded random inputs.

TEST(TensorProperties, PartialTracePreservesTraceAndHermiticity) {
    Rng rng(101);
    const Signature sig{{"a", 2}, {"b", 3}, {"c", 2}};
    for (int trial = 0; trial < 50; ++trial) {
        const DensityMatrix rho = density_of(random_ket(sig, rng));
        for (const Labels& keep : {Labels{"a"}, Labels{"b"}, Labels{"a", "c"}, Labels{"b", "c"}}) {
            const DensityMatrix r = partial_trace(rho, keep);
            EXPECT_NEAR(r.matrix().trace().real(), 1.0, 1e-12);
            EXPECT_NEAR(r.matrix().trace().imag(), 0.0, 1e-12);
            EXPECT_LT(max_abs_diff(r.matrix(), r.matrix().adjoint()), 1e-12);
        }
    }
}

TEST(TensorProperties, InnerFactorizesOverTensor) {
    Rng rng(202);
    const Signature s1{{"x", 3}};
    const Signature s2{{"y", 2}, {"z", 2}};
    for (int trial = 0; trial < 50; ++trial) {
        const Ket a = random_ket(s1, rng), c = random_ket(s1, rng);
        const Ket b = random_ket(s2, rng), d = random_ket(s2, rng);
        EXPECT_TRUE(ComplexNear(inner(tensor(a, b), tensor(c, d)), inner(a, c) * inner(b, d), 1e-12));
    }
}

TEST(TensorProperties, PureStatesHaveZeroEntropy) {
    Rng rng(303);
    const Signature sig{{"a", 2}, {"b", 4}};
    for (int trial = 0; trial < 50; ++trial) {
        EXPECT_LT(std::abs(entropy(density_of(random_ket(sig, rng)))), 1e-12);
    }
}
