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

#include "nclab/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace nclab {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool parse_plain(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(out);
}

std::int64_t parse_integer(const std::string& key, const std::string& value, int line) {
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (value.empty() || end != value.c_str() + value.size()) {
        throw ConfigError("expected an integer, got '" + value + "'", line, key);
    }
    return v;
}

double number(const std::string& key, const std::string& value, int line) {
    try {
        return parse_number(value);
    } catch (const ConfigError& e) {
        throw ConfigError(e.what(), line, key);
    }
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, int)>;

struct KeyInfo {
    Setter set;
    bool numeric;
};

#define NUM(key, field) \
    t[key] = KeyInfo { [](ScenarioConfig& c, const std::string& v, int l) { c.field = number(key, v, l); }, true }

const std::map<std::string, KeyInfo>& key_table() {
    static const std::map<std::string, KeyInfo> table = [] {
        std::map<std::string, KeyInfo> t;
        t["kind"] = {[](ScenarioConfig& c, const std::string& v, int l) {
                         if (v == "nosignal") {
                             c.kind = ScenarioKind::NoSignal;
                         } else if (v == "conservation") {
                             c.kind = ScenarioKind::Conservation;
                         } else if (v == "gram-equivalence") {
                             c.kind = ScenarioKind::GramEquivalence;
                         } else {
                             throw ConfigError("unknown kind '" + v + "'", l, "kind");
                         }
                     },
                     false};
        NUM("basis1.psi.theta", basis1_psi.theta);
        NUM("basis1.psi.phi", basis1_psi.phi);
        NUM("basis1.alpha.theta", basis1_alpha.theta);
        NUM("basis1.alpha.phi", basis1_alpha.phi);
        NUM("basis2.psi.theta", basis2_psi.theta);
        NUM("basis2.psi.phi", basis2_psi.phi);
        NUM("basis2.alpha.theta", basis2_alpha.theta);
        NUM("basis2.alpha.phi", basis2_alpha.phi);
        t["machine.mode"] = {[](ScenarioConfig& c, const std::string& v, int l) {
                                 if (v == "termwise") {
                                     c.machine_mode = MachineMode::Termwise;
                                 } else if (v == "linear") {
                                     c.machine_mode = MachineMode::LinearExtension;
                                 } else {
                                     throw ConfigError("machine.mode must be termwise or linear", l, "machine.mode");
                                 }
                             },
                             false};
        t["machine.cross_outputs"] = {[](ScenarioConfig& c, const std::string& v, int l) {
                                          if (v == "passthrough") {
                                              c.cross_outputs = CrossOutputs::Passthrough;
                                          } else if (v == "swap") {
                                              c.cross_outputs = CrossOutputs::Swapped;
                                          } else {
                                              throw ConfigError("machine.cross_outputs must be passthrough or swap", l,
                                                                "machine.cross_outputs");
                                          }
                                      },
                                      false};
        t["machine.ancilla_dim"] = {[](ScenarioConfig& c, const std::string& v, int l) {
                                        c.ancilla_dim = parse_integer("machine.ancilla_dim", v, l);
                                    },
                                    true};
        NUM("machine.ancilla_overlap", ancilla_overlap);
        NUM("overlap.a", a);
        NUM("overlap.b", b);
        NUM("overlap.c", c);
        NUM("overlap.a_phase", a_phase);
        NUM("overlap.b_phase", b_phase);
        NUM("overlap.c_phase", c_phase);
        NUM("state.branch_weight", branch_weight);
        t["family.dimension"] = {[](ScenarioConfig& c, const std::string& v, int l) {
                                     c.family_dimension = parse_integer("family.dimension", v, l);
                                 },
                                 true};
        t["family.size"] = {[](ScenarioConfig& c, const std::string& v, int l) {
                                c.family_size = parse_integer("family.size", v, l);
                            },
                            true};
        t["family.seed"] = {[](ScenarioConfig& c, const std::string& v, int l) {
                                const std::int64_t s = parse_integer("family.seed", v, l);
                                if (s < 0) throw ConfigError("family.seed must be nonnegative", l, "family.seed");
                                c.seed = static_cast<std::uint64_t>(s);
                            },
                            true};
        NUM("family.mismatch", mismatch);
        NUM("tolerance.assert", tolerance_assert);
        NUM("tolerance.residual", tolerance_residual);
        t["output.format"] = {[](ScenarioConfig& c, const std::string& v, int l) {
                                  try {
                                      c.format = parse_format(v);
                                  } catch (const ConfigError& e) {
                                      throw ConfigError(e.what(), l, "output.format");
                                  }
                              },
                              false};
        return t;
    }();
    return table;
}

#undef NUM

void require(bool ok, const std::string& key, const std::string& message) {
    if (!ok) throw ConfigError(key + " " + message, 0, key);
}

void check_angles(const std::string& prefix, const BlochAngles& b) {
    require(b.theta >= 0 && b.theta <= std::numbers::pi, prefix + ".theta", "must lie in [0, pi]");
    require(b.phi >= 0 && b.phi < 2 * std::numbers::pi, prefix + ".phi", "must lie in [0, 2pi)");
}

}  // namespace

ConfigError::ConfigError(const std::string& message, int line, std::string key)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line), key_(std::move(key)) {}

std::string to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::NoSignal:
            return "nosignal";
        case ScenarioKind::Conservation:
            return "conservation";
        case ScenarioKind::GramEquivalence:
            return "gram-equivalence";
    }
    return "?";
}

std::string to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::Table:
            return "table";
        case OutputFormat::Csv:
            return "csv";
        case OutputFormat::Json:
            return "json";
    }
    return "?";
}

std::string to_string(CrossOutputs c) { return c == CrossOutputs::Passthrough ? "passthrough" : "swap"; }

OutputFormat parse_format(const std::string& s) {
    if (s == "table") return OutputFormat::Table;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json" || s == "json-like") return OutputFormat::Json;
    throw ConfigError("format must be table, csv or json, got '" + s + "'");
}

double parse_number(const std::string& raw) {
    const std::string text = trim(raw);
    double v = 0.0;
    if (parse_plain(text, v)) return v;
    const std::size_t at = text.find("pi");
    if (at == std::string::npos) throw ConfigError("not a number: '" + raw + "'");
    std::string head = trim(text.substr(0, at));
    const std::string tail = trim(text.substr(at + 2));
    double factor = 1.0;
    if (!head.empty() && head.back() == '*') head = trim(head.substr(0, head.size() - 1));
    if (head == "-") {
        factor = -1.0;
    } else if (!head.empty() && head != "+" && !parse_plain(head, factor)) {
        throw ConfigError("not a number: '" + raw + "'");
    }
    double divisor = 1.0;
    if (!tail.empty()) {
        if (tail[0] != '/' || !parse_plain(trim(tail.substr(1)), divisor) || divisor == 0.0) {
            throw ConfigError("not a number: '" + raw + "'");
        }
    }
    return factor * std::numbers::pi / divisor;
}

void set_value(ScenarioConfig& config, const std::string& key, const std::string& value, int line) {
    const auto& table = key_table();
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown key '" + key + "'", line, key);
    it->second.set(config, trim(value), line);
}

bool is_numeric_key(const std::string& key) {
    const auto& table = key_table();
    const auto it = table.find(key);
    return it != table.end() && it->second.numeric;
}

void set_number(ScenarioConfig& config, const std::string& key, double value) {
    if (!is_numeric_key(key)) throw ConfigError("'" + key + "' is not a numeric key", 0, key);
    std::string text;
    if (key == "machine.ancilla_dim" || key.rfind("family.", 0) == 0) {
        if (key != "family.mismatch") {
            const double r = std::round(value);
            if (std::abs(r - value) > 1e-9) throw ConfigError(key + " takes integer values", 0, key);
            text = std::to_string(static_cast<long long>(r));
        }
    }
    if (text.empty()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", value);
        text = buf;
    }
    set_value(config, key, text);
}

void validate(const ScenarioConfig& c) {
    check_angles("basis1.psi", c.basis1_psi);
    check_angles("basis1.alpha", c.basis1_alpha);
    check_angles("basis2.psi", c.basis2_psi);
    check_angles("basis2.alpha", c.basis2_alpha);
    require(c.ancilla_dim >= 3 && c.ancilla_dim <= 16, "machine.ancilla_dim", "must lie in [3, 16]");
    require(std::abs(c.ancilla_overlap) <= 1.0, "machine.ancilla_overlap", "must lie in [-1, 1]");
    require(c.a >= 0 && c.a <= 1, "overlap.a", "must lie in [0, 1]");
    require(c.b >= 0 && c.b <= 1, "overlap.b", "must lie in [0, 1]");
    require(c.c >= 0 && c.c <= 1, "overlap.c", "must lie in [0, 1]");
    require(c.branch_weight > 0 && c.branch_weight < 1, "state.branch_weight", "must lie in (0, 1)");
    require(c.family_dimension >= 2 && c.family_dimension <= 16, "family.dimension", "must lie in [2, 16]");
    require(c.family_size >= 1 && c.family_size <= c.family_dimension, "family.size",
            "must lie in [1, family.dimension]");
    require(c.mismatch >= 0 && c.mismatch <= 1, "family.mismatch", "must lie in [0, 1]");
    require(c.tolerance_assert > 0, "tolerance.assert", "must be positive");
    require(c.tolerance_residual > 0, "tolerance.residual", "must be positive");
}

ScenarioConfig parse_config(const std::string& text, const ScenarioConfig& defaults) {
    ScenarioConfig config = defaults;
    std::istringstream in(text);
    std::string raw;
    std::map<std::string, int> seen;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError("missing key", line);
        if (value.empty()) throw ConfigError("missing value", line, key);
        if (const auto it = seen.find(key); it != seen.end()) {
            throw ConfigError("duplicate key '" + key + "' (first on line " + std::to_string(it->second) + ")", line,
                              key);
        }
        seen[key] = line;
        set_value(config, key, value, line);
    }
    try {
        validate(config);
    } catch (const ConfigError& e) {
        const auto it = seen.find(e.key());
        throw ConfigError(e.what(), it == seen.end() ? 0 : it->second, e.key());
    }
    return config;
}

ScenarioConfig load_config(const std::string& path, const ScenarioConfig& defaults) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), defaults);
}

}  // namespace nclab
