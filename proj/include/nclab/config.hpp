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

// Scenario configuration: a line-oriented `key = value` file with dotted
// keys, one scenario per file. Lines starting with '#' are comments.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nclab/error.hpp"
#include "nclab/machines.hpp"
#include "nclab/nosignal.hpp"
#include "nclab/random.hpp"

namespace nclab {

class ConfigError : public Error {
 public:
    ConfigError(const std::string& message, int line = 0, std::string key = {});
    /// 1-based line in the config file, 0 when not tied to a line.
    int line() const { return line_; }
    const std::string& key() const { return key_; }

 private:
    int line_;
    std::string key_;
};

enum class ScenarioKind { NoSignal, Conservation, GramEquivalence };
enum class OutputFormat { Table, Csv, Json };

std::string to_string(ScenarioKind k);
std::string to_string(OutputFormat f);
std::string to_string(CrossOutputs c);
OutputFormat parse_format(const std::string& s);

struct BlochAngles {
    double theta = 0.0;
    double phi = 0.0;
};

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::NoSignal;

    // nosignal
    BlochAngles basis1_psi;
    BlochAngles basis1_alpha;
    BlochAngles basis2_psi{0.7853981633974483, 0.0};
    BlochAngles basis2_alpha{0.7853981633974483, 0.0};
    MachineMode machine_mode = MachineMode::Termwise;
    CrossOutputs cross_outputs = CrossOutputs::Passthrough;
    std::int64_t ancilla_dim = 4;
    double ancilla_overlap = 0.0;

    // conservation
    double a = 0.6, b = 0.5, c = 0.5;
    double a_phase = 0.0, b_phase = 0.0, c_phase = 0.0;
    double branch_weight = 0.5;

    // gram-equivalence
    std::int64_t family_dimension = 4;
    std::int64_t family_size = 3;
    std::uint64_t seed = kDefaultSeed;
    double mismatch = 0.0;

    double tolerance_assert = kAssertTolerance;
    double tolerance_residual = kResidualTolerance;
    std::optional<OutputFormat> format;
};

/// Numbers accept plain decimals and multiples of pi: `pi`, `pi/4`,
/// `3*pi/8`, `-pi/2`, `2pi`.
double parse_number(const std::string& text);

/// Applies one key. Throws ConfigError for unknown keys or bad values.
void set_value(ScenarioConfig& config, const std::string& key, const std::string& value, int line = 0);
/// Keys whose values are numbers, i.e. the keys a sweep may vary.
bool is_numeric_key(const std::string& key);
void set_number(ScenarioConfig& config, const std::string& key, double value);

/// Range checks; throws ConfigError.
void validate(const ScenarioConfig& config);

/// Parses and validates. `defaults` supplies values for absent keys.
ScenarioConfig parse_config(const std::string& text, const ScenarioConfig& defaults = {});
ScenarioConfig load_config(const std::string& path, const ScenarioConfig& defaults = {});

}  // namespace nclab
