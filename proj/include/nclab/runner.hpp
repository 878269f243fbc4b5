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

// Scenario pipelines behind the command line: single runs and grid sweeps.

#include <string>
#include <vector>

#include "nclab/config.hpp"
#include "nclab/report.hpp"

namespace nclab {

/// Runs the pipeline selected by config.kind.
ScenarioReport run(const ScenarioConfig& config);

struct SweepAxis {
    std::string key;
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;

    /// lo, lo+step, ... up to hi; the last point snaps to hi.
    std::vector<double> values() const;
};

/// `key=lo:hi:step` or `key=value`. Throws ConfigError.
SweepAxis parse_axis(const std::string& text);

/// One report per grid point, the first axis varying slowest. Points are
/// evaluated by `jobs` worker threads; the output order does not depend on
/// it.
std::vector<ScenarioReport> sweep(const ScenarioConfig& base, const std::vector<SweepAxis>& axes,
                                  unsigned jobs = 1);

}  // namespace nclab
