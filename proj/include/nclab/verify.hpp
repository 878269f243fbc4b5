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

// Named invariant checks across every module, run with fixed seeds.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nclab/random.hpp"

namespace nclab {

struct CheckResult {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    /// Lower-bound checks pass when value > tolerance, the rest when
    /// value < tolerance.
    bool lower_bound = false;
    bool pass = false;
};

struct VerifyOptions {
    std::uint64_t seed = kDefaultSeed;
    /// Replaces every check's default tolerance.
    std::optional<double> tolerance;
};

std::vector<CheckResult> verify(const VerifyOptions& options = {});

/// One line per check followed by a summary line.
std::string render_checks(const std::vector<CheckResult>& results, const VerifyOptions& options);

}  // namespace nclab
