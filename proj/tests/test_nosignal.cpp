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

#include "nclab/nosignal.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "nclab/linalg.hpp"
#include "nclab/random.hpp"
#include "test_util.hpp"

using namespace nclab;
using nclab::testing::MatrixNear;

namespace {

constexpr double kPi = std::numbers::pi;

// Basis 1 computational; basis 2 with psi and alpha both at theta.
TwoSingletScenario tilted(double theta, std::size_t ancilla_dim = 4) {
    const BasisPair b1 = qubit_basis(0, 0);
    const BasisPair b2 = qubit_basis(theta, 0);
    return build_scenario({b1, b1}, {b2, b2}, ancilla_dim);
}

// Frozen from tests/oracles/signalling_oracle.py.
struct Frozen {
    double theta;
    double magnitude;
};
constexpr Frozen kFrozen[] = {
    {kPi / 8, 0.23230164350952853},
    {kPi / 4, 0.43727938693663038},
    {3 * kPi / 8, 0.59223385568313114},
    {kPi / 2, 0.68301270189221941},
};

}  // namespace

TEST(TwoSinglet, JointStateLayout) {
    const TwoSingletScenario s = tilted(kPi / 4);
    EXPECT_EQ(s.joint().signature().labels(), (Labels{"Apsi", "Bpsi", "Aalpha", "Balpha", "C"}));
    EXPECT_EQ(s.joint().signature().total_dim(), 64u);
    EXPECT_NEAR(s.joint().norm(), 1.0, 1e-15);
    EXPECT_THROW(s.basis(0), DomainError);
    EXPECT_THROW(s.basis(3), DomainError);
}

TEST(TwoSinglet, AncillaMustHoldMarkers) {
    const TwoSingletScenario small = tilted(kPi / 4, 2);
    EXPECT_THROW(default_wishful_cloner(small), DomainError);
    const TwoSingletScenario three = tilted(kPi / 4, 3);
    EXPECT_NO_THROW(default_wishful_cloner(three));
}

TEST(TwoSinglet, BobMarginalMaximallyMixed) {
    Rng rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        const TwoSingletScenario s =
            build_scenario({random_basis(rng), random_basis(rng)}, {random_basis(rng), random_basis(rng)});
        EXPECT_TRUE(MatrixNear(bob_marginal_before(s).matrix(), Matrix::Identity(4, 4) / 4.0, 1e-12));
        const DensityMatrix alice = partial_trace(density_of(s.joint()), s.alice_labels());
        EXPECT_TRUE(MatrixNear(alice.matrix(), Matrix::Identity(4, 4) / 4.0, 1e-12));
    }
}

TEST(TwoSinglet, ExpansionIsOrthonormal) {
    const TwoSingletScenario s = tilted(kPi / 3);
    for (int idx : {1, 2}) {
        const StateFamily e = bob_expansion(s, idx);
        ASSERT_EQ(e.size(), 4u);
        EXPECT_TRUE(MatrixNear(gram(e), Matrix::Identity(4, 4), 1e-15));
    }
}

TEST(WishfulSignalling, MatchesOracle) {
    for (const auto& f : kFrozen) {
        const TwoSingletScenario s = tilted(f.theta);
        const double m = signalling_magnitude(s, default_wishful_cloner(s));
        EXPECT_NEAR(m, f.magnitude, 1e-10) << "theta=" << f.theta;
        EXPECT_GT(m, 1e-6);
    }
}

TEST(WishfulSignalling, SwappedCrossOutputsMatchOracle) {
    for (const auto& f : kFrozen) {
        const TwoSingletScenario s = tilted(f.theta);
        WishfulOptions opt;
        opt.cross = CrossOutputs::Swapped;
        EXPECT_NEAR(signalling_magnitude(s, default_wishful_cloner(s, opt)), f.magnitude, 1e-10);
    }
}

TEST(WishfulSignalling, VanishesWhenBasesCoincide) {
    const TwoSingletScenario s = tilted(0.0);
    EXPECT_LT(signalling_magnitude(s, default_wishful_cloner(s)), 1e-12);
}

TEST(WishfulSignalling, MarginalsAreStates) {
    const TwoSingletScenario s = tilted(kPi / 4);
    const MachineSpec m = default_wishful_cloner(s);
    for (int idx : {1, 2}) {
        const DensityMatrix rho = bob_marginal_after(s, m, idx);
        EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
        EXPECT_EQ(rho.signature().labels(), s.bob_labels());
    }
}

TEST(WishfulSignalling, SignReadingDoesNotChangeMixtures) {
    const TwoSingletScenario s = tilted(kPi / 4);
    const MachineSpec m = default_wishful_cloner(s);
    for (int idx : {1, 2}) {
        EXPECT_TRUE(MatrixNear(bob_marginal_after(s, m, idx, SignReading::Faithful).matrix(),
                               bob_marginal_after(s, m, idx, SignReading::AllPlus).matrix(), 1e-12));
    }
}

TEST(WishfulSignalling, UnionIsNotPhysical) {
    const TwoSingletScenario s = tilted(kPi / 4);
    const MachineSpec m = default_wishful_cloner(s);
    EXPECT_EQ(m.rules().size(), 8u);
    EXPECT_FALSE(check_consistency(m).consistent);
    EXPECT_THROW(bob_marginal_after(s, m.with_mode(MachineMode::LinearExtension), 1), InconsistentGram);
}

TEST(WishfulSignalling, LinearReadingOfOneBasisDoesNotSignal) {
    for (const auto& f : kFrozen) {
        const TwoSingletScenario s = tilted(f.theta);
        const MachineSpec m = wishful_cloner_for(s, 1).with_mode(MachineMode::LinearExtension);
        EXPECT_LT(signalling_magnitude(s, m), 1e-12);
    }
}

TEST(NoSignalling, RandomIsometriesOnBobsFactors) {
    Rng rng(62);
    for (int trial = 0; trial < 30; ++trial) {
        const TwoSingletScenario s =
            build_scenario({random_basis(rng), random_basis(rng)}, {random_basis(rng), random_basis(rng)}, 3);
        const Signature bob = s.joint().signature().select(s.bob_labels());
        const Matrix u = random_unitary(bob.total_dim(), rng);
        std::vector<MachineRule> rules;
        for (std::size_t k = 0; k < bob.total_dim(); ++k) {
            const Ket e = Ket::basis(bob, k);
            rules.push_back({e, Ket(bob, u * e.amplitudes())});
        }
        const MachineSpec m(bob, bob, rules, MachineMode::LinearExtension);
        EXPECT_LT(signalling_magnitude(s, m), 1e-12);
    }
}
