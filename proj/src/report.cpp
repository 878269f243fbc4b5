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

#include "nclab/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include <json.hpp>

namespace nclab {

namespace {

double canonical(double v) { return std::strtod(format_double(v).c_str(), nullptr); }

std::string csv_cell(const Value& v) {
    if (const auto* s = std::get_if<std::string>(&v)) {
        std::string out = "\"";
        for (char ch : *s) {
            if (ch == '"') out += '"';
            out += ch;
        }
        return out + "\"";
    }
    return format_value(v);
}

std::string json_value(const Value& v) {
    if (const auto* s = std::get_if<std::string>(&v)) return nlohmann::json(*s).dump();
    return format_value(v);
}

Value infer(const std::string& cell, bool quoted) {
    if (quoted) return cell;
    if (cell == "true") return true;
    if (cell == "false") return false;
    if (cell.find_first_of(".eEni") != std::string::npos) return std::strtod(cell.c_str(), nullptr);
    return static_cast<std::int64_t>(std::strtoll(cell.c_str(), nullptr, 10));
}

// One CSV line into cells; returns (text, quoted) pairs.
std::vector<std::pair<std::string, bool>> split_csv(const std::string& line) {
    std::vector<std::pair<std::string, bool>> cells;
    std::size_t i = 0;
    while (true) {
        std::string cell;
        bool quoted = false;
        if (i < line.size() && line[i] == '"') {
            quoted = true;
            ++i;
            while (i < line.size()) {
                if (line[i] == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        cell += '"';
                        i += 2;
                        continue;
                    }
                    ++i;
                    break;
                }
                cell += line[i++];
            }
        } else {
            while (i < line.size() && line[i] != ',') cell += line[i++];
        }
        cells.emplace_back(cell, quoted);
        if (i >= line.size()) break;
        if (line[i] != ',') throw Error("malformed CSV near column " + std::to_string(i));
        ++i;
    }
    return cells;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

Value from_json(const nlohmann::ordered_json& j, const std::string& key) {
    if (j.is_boolean()) return j.get<bool>();
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_number_float()) return j.get<double>();
    if (j.is_string()) return j.get<std::string>();
    throw Error("unsupported JSON value for '" + key + "'");
}

ScenarioReport from_object(const nlohmann::ordered_json& obj) {
    if (!obj.is_object()) throw Error("expected a JSON object");
    std::vector<Field> flat;
    for (const auto& [k, v] : obj.items()) flat.emplace_back(k, from_json(v, k));
    return ScenarioReport::from_flat(flat);
}

std::string render_table(const ScenarioReport& r) {
    std::size_t width = 0;
    for (const auto& [k, v] : r.fields()) width = std::max(width, k.size());
    std::string out;
    for (const auto& [k, v] : r.fields()) {
        out += k + std::string(width - k.size() + 2, ' ') + format_value(v) + "\n";
    }
    std::size_t nw = 0;
    for (const auto& v : r.verdicts()) nw = std::max(nw, v.name.size());
    for (const auto& v : r.verdicts()) {
        out += std::string(v.pass ? "PASS  " : "FAIL  ") + v.name + std::string(nw - v.name.size() + 2, ' ') +
               "deviation " + format_double(v.deviation) + "  tolerance " + format_double(v.tolerance) + "\n";
    }
    return out;
}

std::vector<std::string> keys_of(const std::vector<Field>& flat) {
    std::vector<std::string> keys;
    for (const auto& f : flat) keys.push_back(f.first);
    return keys;
}

}  // namespace

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

std::string format_value(const Value& v) {
    struct Visitor {
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(std::int64_t i) const { return std::to_string(i); }
        std::string operator()(double d) const { return format_double(d); }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, v);
}

void ScenarioReport::set(const std::string& key, Value v) {
    if (auto* d = std::get_if<double>(&v)) *d = canonical(*d);
    for (auto& f : fields_) {
        if (f.first == key) {
            f.second = std::move(v);
            return;
        }
    }
    fields_.emplace_back(key, std::move(v));
}

void ScenarioReport::add_verdict(const std::string& name, double deviation, double tolerance) {
    Verdict v{name, canonical(deviation), canonical(tolerance), deviation < tolerance};
    for (auto& existing : verdicts_) {
        if (existing.name == name) {
            existing = v;
            return;
        }
    }
    verdicts_.push_back(v);
}

const Value* ScenarioReport::find(const std::string& key) const {
    for (const auto& f : fields_) {
        if (f.first == key) return &f.second;
    }
    return nullptr;
}

const Verdict* ScenarioReport::find_verdict(const std::string& name) const {
    for (const auto& v : verdicts_) {
        if (v.name == name) return &v;
    }
    return nullptr;
}

bool ScenarioReport::all_pass() const {
    return std::all_of(verdicts_.begin(), verdicts_.end(), [](const Verdict& v) { return v.pass; });
}

std::vector<Field> ScenarioReport::flat() const {
    std::vector<Field> out = fields_;
    for (const auto& v : verdicts_) {
        out.emplace_back("verdict." + v.name + ".pass", v.pass);
        out.emplace_back("verdict." + v.name + ".deviation", v.deviation);
        out.emplace_back("verdict." + v.name + ".tolerance", v.tolerance);
    }
    return out;
}

ScenarioReport ScenarioReport::from_flat(const std::vector<Field>& flat) {
    ScenarioReport r;
    const std::string prefix = "verdict.";
    for (const auto& [key, value] : flat) {
        if (key.rfind(prefix, 0) != 0) {
            r.fields_.emplace_back(key, value);
            continue;
        }
        const std::size_t dot = key.rfind('.');
        const std::string name = key.substr(prefix.size(), dot - prefix.size());
        const std::string attr = key.substr(dot + 1);
        Verdict* v = nullptr;
        for (auto& existing : r.verdicts_) {
            if (existing.name == name) v = &existing;
        }
        if (v == nullptr) {
            r.verdicts_.push_back(Verdict{name});
            v = &r.verdicts_.back();
        }
        if (attr == "pass" && std::holds_alternative<bool>(value)) {
            v->pass = std::get<bool>(value);
        } else if (attr == "deviation" && std::holds_alternative<double>(value)) {
            v->deviation = std::get<double>(value);
        } else if (attr == "tolerance" && std::holds_alternative<double>(value)) {
            v->tolerance = std::get<double>(value);
        } else {
            throw Error("malformed verdict column '" + key + "'");
        }
    }
    return r;
}

std::string render(const ScenarioReport& r, OutputFormat format) {
    if (format == OutputFormat::Json) {
        std::string out = "{\n";
        const auto flat = r.flat();
        for (std::size_t i = 0; i < flat.size(); ++i) {
            out += "  " + nlohmann::json(flat[i].first).dump() + ": " + json_value(flat[i].second);
            out += i + 1 < flat.size() ? ",\n" : "\n";
        }
        return out + "}\n";
    }
    return render(std::vector<ScenarioReport>{r}, format);
}

std::string render(const std::vector<ScenarioReport>& rs, OutputFormat format) {
    std::string out;
    if (format == OutputFormat::Table) {
        for (std::size_t i = 0; i < rs.size(); ++i) {
            if (i > 0) out += "\n";
            out += render_table(rs[i]);
        }
        return out;
    }
    if (rs.empty()) return format == OutputFormat::Json ? "[]\n" : "";
    const std::vector<std::string> header = keys_of(rs.front().flat());
    for (const auto& r : rs) {
        if (keys_of(r.flat()) != header) throw Error("reports do not share the same columns");
    }
    if (format == OutputFormat::Csv) {
        for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
        out += "\n";
        for (const auto& r : rs) {
            const auto flat = r.flat();
            for (std::size_t i = 0; i < flat.size(); ++i) out += (i ? "," : "") + csv_cell(flat[i].second);
            out += "\n";
        }
        return out;
    }
    out = "[\n";
    for (std::size_t k = 0; k < rs.size(); ++k) {
        const auto flat = rs[k].flat();
        out += "  {";
        for (std::size_t i = 0; i < flat.size(); ++i) {
            out += (i ? ", " : "") + nlohmann::json(flat[i].first).dump() + ": " + json_value(flat[i].second);
        }
        out += k + 1 < rs.size() ? "},\n" : "}\n";
    }
    return out + "]\n";
}

std::vector<ScenarioReport> parse_reports(const std::string& text, OutputFormat format) {
    std::vector<ScenarioReport> out;
    if (format == OutputFormat::Json) {
        const auto j = nlohmann::ordered_json::parse(text);
        if (j.is_array()) {
            for (const auto& obj : j) out.push_back(from_object(obj));
        } else {
            out.push_back(from_object(j));
        }
        return out;
    }
    if (format != OutputFormat::Csv) throw Error("only csv and json reports can be parsed");
    const auto lines = lines_of(text);
    if (lines.empty()) return out;
    std::vector<std::string> header;
    for (const auto& [cell, quoted] : split_csv(lines[0])) header.push_back(cell);
    for (std::size_t row = 1; row < lines.size(); ++row) {
        const auto cells = split_csv(lines[row]);
        if (cells.size() != header.size()) {
            throw Error("CSV row " + std::to_string(row) + " has " + std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(header.size()));
        }
        std::vector<Field> flat;
        for (std::size_t i = 0; i < cells.size(); ++i) flat.emplace_back(header[i], infer(cells[i].first, cells[i].second));
        out.push_back(ScenarioReport::from_flat(flat));
    }
    return out;
}

ScenarioReport parse_report(const std::string& text, OutputFormat format) {
    auto rs = parse_reports(text, format);
    if (rs.size() != 1) throw Error("expected exactly one report, found " + std::to_string(rs.size()));
    return std::move(rs.front());
}

}  // namespace nclab
