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

// Seeded generators for property checks. All draws come from one
// std::mt19937_64 so a seed pins the whole sequence.

#include <cstdint>
#include <random>

#include "nclab/states.hpp"
#include "nclab/tensor.hpp"

namespace nclab {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20260417;

/// Gaussian complex vector, normalized.
Ket random_ket(const Signature& sig, Rng& rng);
/// Haar-distributed unitary (QR of a Gaussian matrix with phase fix).
Matrix random_unitary(Eigen::Index n, Rng& rng);
/// Isometry made of the first `cols` columns of a Haar unitary.
Matrix random_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng);
Matrix random_hermitian(Eigen::Index n, Rng& rng);
/// Bloch angles drawn uniformly on the sphere.
BasisPair random_basis(Rng& rng, const std::string& label = "q");
double uniform(Rng& rng, double lo, double hi);

}  // namespace nclab
