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

// nclab: run scenarios, sweeps and the invariant suite from the command line.
//
//   nclab run <file>
//   nclab sweep <file> --grid overlap.b=0:1:0.1 [--jobs N]
//   nclab verify [--tolerance T] [--seed S]
//
// Exit status: 0 all verdicts pass, 1 a scientific verdict fails, 2 bad
// configuration or usage.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "nclab/config.hpp"
#include "nclab/report.hpp"
#include "nclab/runner.hpp"
#include "nclab/verify.hpp"

namespace {

constexpr const char* kToleranceEnv = "NCLAB_TOLERANCE";

std::optional<double> env_tolerance() {
    const char* raw = std::getenv(kToleranceEnv);
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    const double t = nclab::parse_number(raw);
    if (!(t > 0)) throw nclab::ConfigError(std::string(kToleranceEnv) + " must be positive");
    return t;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw nclab::ConfigError("cannot write '" + out_path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification laboratory for no-cloning, no-signalling and entanglement conservation."};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format_flag;
    std::string out_path;
    app.add_option("--format", format_flag, "Output format: table, csv or json (json-like)")
        ->check(CLI::IsMember({"table", "csv", "json", "json-like"}));
    app.add_option("--out", out_path, "Write output to this path instead of stdout");

    std::string file;
    auto* run_cmd = app.add_subcommand("run", "Run one scenario file");
    run_cmd->add_option("file", file, "Scenario config")->required();

    std::vector<std::string> grid;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a scenario over a parameter grid");
    sweep_cmd->add_option("file", file, "Scenario config")->required();
    sweep_cmd->add_option("--grid", grid, "Axes key=lo:hi:step, first axis slowest")->required();
    sweep_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    std::optional<double> tolerance;
    std::uint64_t seed = nclab::kDefaultSeed;
    auto* verify_cmd = app.add_subcommand("verify", "Run every invariant check");
    verify_cmd->add_option("--tolerance", tolerance, "Override every check's tolerance");
    verify_cmd->add_option("--seed", seed, "Seed for randomized checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify_cmd) {
            nclab::VerifyOptions opt;
            opt.seed = seed;
            opt.tolerance = tolerance ? tolerance : env_tolerance();
            if (opt.tolerance && !(*opt.tolerance > 0)) throw nclab::ConfigError("--tolerance must be positive");
            const auto results = nclab::verify(opt);
            emit(nclab::render_checks(results, opt), out_path);
            for (const auto& r : results) {
                if (!r.pass) return 1;
            }
            return 0;
        }

        nclab::ScenarioConfig defaults;
        if (const auto t = env_tolerance()) defaults.tolerance_assert = *t;
        const nclab::ScenarioConfig config = nclab::load_config(file, defaults);
        nclab::OutputFormat format = config.format.value_or(nclab::OutputFormat::Table);
        if (!format_flag.empty()) format = nclab::parse_format(format_flag);

        if (*run_cmd) {
            const nclab::ScenarioReport report = nclab::run(config);
            emit(nclab::render(report, format), out_path);
            return report.all_pass() ? 0 : 1;
        }

        std::vector<nclab::SweepAxis> axes;
        for (const auto& g : grid) axes.push_back(nclab::parse_axis(g));
        const auto reports = nclab::sweep(config, axes, jobs);
        emit(nclab::render(reports, format), out_path);
        for (const auto& r : reports) {
            if (!r.all_pass()) return 1;
        }
        return 0;
    } catch (const nclab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nclab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
