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

// Flat scenario reports: ordered named fields plus named verdicts, rendered as
// an aligned table, CSV, or a JSON object.

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nclab/config.hpp"

namespace nclab {

using Value = std::variant<bool, std::int64_t, double, std::string>;
using Field = std::pair<std::string, Value>;

/// 12 significant digits, lowercase exponent; -0 prints as 0.
std::string format_double(double v);
std::string format_value(const Value& v);

struct Verdict {
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;

    bool operator==(const Verdict&) const = default;
};

class ScenarioReport {
 public:
    /// Adds or replaces a field. Doubles are stored as rendered, so a parsed
    /// report compares equal to the original.
    void set(const std::string& key, Value v);
    /// pass = deviation < tolerance.
    void add_verdict(const std::string& name, double deviation, double tolerance);

    const std::vector<Field>& fields() const { return fields_; }
    const std::vector<Verdict>& verdicts() const { return verdicts_; }
    const Value* find(const std::string& key) const;
    const Verdict* find_verdict(const std::string& name) const;
    bool all_pass() const;

    /// Fields followed by verdict.<name>.pass/.deviation/.tolerance.
    std::vector<Field> flat() const;
    static ScenarioReport from_flat(const std::vector<Field>& flat);

    bool operator==(const ScenarioReport&) const = default;

 private:
    std::vector<Field> fields_;
    std::vector<Verdict> verdicts_;
};

std::string render(const ScenarioReport& r, OutputFormat format);
/// Several reports sharing the same columns: one CSV header, one JSON array,
/// or tables separated by blank lines.
std::string render(const std::vector<ScenarioReport>& rs, OutputFormat format);

/// Inverse of render for Csv and Json.
ScenarioReport parse_report(const std::string& text, OutputFormat format);
std::vector<ScenarioReport> parse_reports(const std::string& text, OutputFormat format);

}  // namespace nclab
