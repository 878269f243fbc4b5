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

#include <cmath>
#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "nclab/config.hpp"
#include "nclab/report.hpp"
#include "nclab/runner.hpp"
#include "nclab/verify.hpp"

using namespace nclab;

namespace {

constexpr double kPi = std::numbers::pi;

double num(const ScenarioReport& r, const std::string& key) {
    const Value* v = r.find(key);
    if (v == nullptr) throw std::runtime_error("missing field " + key);
    return std::get<double>(*v);
}

int line_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST(ParseNumber, PlainAndPiMultiples) {
    EXPECT_EQ(parse_number("0.25"), 0.25);
    EXPECT_EQ(parse_number(" -1e-3 "), -1e-3);
    EXPECT_EQ(parse_number("pi"), kPi);
    EXPECT_EQ(parse_number("pi/4"), kPi / 4);
    EXPECT_EQ(parse_number("3*pi/8"), 3 * kPi / 8);
    EXPECT_EQ(parse_number("-pi/2"), -kPi / 2);
    EXPECT_EQ(parse_number("2pi"), 2 * kPi);
    EXPECT_THROW(parse_number("pie"), ConfigError);
    EXPECT_THROW(parse_number("pi/0"), ConfigError);
    EXPECT_THROW(parse_number("abc"), ConfigError);
    EXPECT_THROW(parse_number(""), ConfigError);
}

TEST(ParseConfig, KeysCommentsAndDefaults) {
    const ScenarioConfig c = parse_config(
        "# comment\n"
        "kind = conservation\n"
        "\n"
        "overlap.a = 0.6   \n"
        "overlap.b_phase = pi/3\n"
        "state.branch_weight = 0.25\n"
        "output.format = csv\n");
    EXPECT_EQ(c.kind, ScenarioKind::Conservation);
    EXPECT_EQ(c.a, 0.6);
    EXPECT_EQ(c.b, 0.5);
    EXPECT_EQ(c.b_phase, kPi / 3);
    EXPECT_EQ(c.branch_weight, 0.25);
    ASSERT_TRUE(c.format.has_value());
    EXPECT_EQ(*c.format, OutputFormat::Csv);
}

TEST(ParseConfig, NosignalKeys) {
    const ScenarioConfig c = parse_config(
        "kind = nosignal\n"
        "basis2.alpha.theta = pi/8\n"
        "basis2.alpha.phi = pi\n"
        "machine.mode = linear\n"
        "machine.cross_outputs = swap\n"
        "machine.ancilla_dim = 6\n");
    EXPECT_EQ(c.basis2_alpha.theta, kPi / 8);
    EXPECT_EQ(c.basis2_alpha.phi, kPi);
    EXPECT_EQ(c.machine_mode, MachineMode::LinearExtension);
    EXPECT_EQ(c.cross_outputs, CrossOutputs::Swapped);
    EXPECT_EQ(c.ancilla_dim, 6);
}

TEST(ParseConfig, ErrorsCarryLineAndKey) {
    try {
        parse_config("kind = nosignal\nmachine.colour = red\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_EQ(e.key(), "machine.colour");
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
    EXPECT_EQ(line_of("kind = nosignal\nkind = conservation\n"), 2);
    EXPECT_EQ(line_of("kind nosignal\n"), 1);
    EXPECT_EQ(line_of("kind =\n"), 1);
    EXPECT_EQ(line_of("kind = teleport\n"), 1);
    EXPECT_EQ(line_of("machine.ancilla_dim = 4.5\n"), 1);
    EXPECT_EQ(line_of("machine.mode = linear\n\noverlap.a = x\n"), 3);
}

TEST(ParseConfig, RangeViolationsPointAtTheirLine) {
    EXPECT_EQ(line_of("kind = conservation\noverlap.c = 1.5\n"), 2);
    EXPECT_EQ(line_of("\n\nbasis1.psi.theta = 4\n"), 3);
    EXPECT_EQ(line_of("basis1.psi.phi = 2pi\n"), 1);
    EXPECT_EQ(line_of("machine.ancilla_dim = 2\n"), 1);
    EXPECT_EQ(line_of("state.branch_weight = 1\n"), 1);
    EXPECT_EQ(line_of("family.dimension = 3\nfamily.size = 4\n"), 2);
    EXPECT_EQ(line_of("tolerance.assert = 0\n"), 1);
}

TEST(ParseConfig, NumericKeysForSweeps) {
    EXPECT_TRUE(is_numeric_key("overlap.b"));
    EXPECT_TRUE(is_numeric_key("machine.ancilla_dim"));
    EXPECT_FALSE(is_numeric_key("machine.mode"));
    EXPECT_FALSE(is_numeric_key("nope"));
    ScenarioConfig c;
    set_number(c, "family.size", 2.0);
    EXPECT_EQ(c.family_size, 2);
    EXPECT_THROW(set_number(c, "family.size", 2.5), ConfigError);
    EXPECT_THROW(set_number(c, "kind", 1.0), ConfigError);
}

TEST(Report, DoubleRendering) {
    EXPECT_EQ(format_double(0.65), "6.50000000000e-01");
    EXPECT_EQ(format_double(-0.0), "0.00000000000e+00");
    EXPECT_EQ(format_double(-0.06), "-6.00000000000e-02");
    EXPECT_EQ(format_double(1.0 / 3.0), "3.33333333333e-01");
    EXPECT_EQ(format_double(123456.0), "1.23456000000e+05");
}

TEST(Report, VerdictPassIsStrict) {
    ScenarioReport r;
    r.add_verdict("equal", 1e-10, 1e-10);
    r.add_verdict("below", 9e-11, 1e-10);
    EXPECT_FALSE(r.find_verdict("equal")->pass);
    EXPECT_TRUE(r.find_verdict("below")->pass);
    EXPECT_FALSE(r.all_pass());
}

TEST(Report, RoundTripWithAwkwardStrings) {
    ScenarioReport r;
    r.set("kind", std::string("a, \"quoted\" string"));
    r.set("number_like", std::string("12"));
    r.set("flag", true);
    r.set("count", std::int64_t{-7});
    r.set("x", 0.1 + 0.2);
    r.add_verdict("v.with.dots", 0.5, 1.0);
    for (OutputFormat f : {OutputFormat::Csv, OutputFormat::Json}) {
        EXPECT_EQ(parse_report(render(r, f), f), r) << render(r, f);
    }
}

TEST(Report, RoundTripForEveryKind) {
    std::vector<ScenarioConfig> configs(3);
    configs[1].kind = ScenarioKind::Conservation;
    configs[1].a_phase = 0.3;
    configs[2].kind = ScenarioKind::GramEquivalence;
    for (const auto& c : configs) {
        const ScenarioReport r = run(c);
        for (OutputFormat f : {OutputFormat::Csv, OutputFormat::Json}) {
            const ScenarioReport back = parse_report(render(r, f), f);
            EXPECT_EQ(back, r);
            EXPECT_EQ(render(back, f), render(r, f));
        }
    }
}

TEST(Report, CsvHasStableColumns) {
    ScenarioConfig c;
    c.kind = ScenarioKind::Conservation;
    const std::string csv = render(run(c), OutputFormat::Csv);
    const std::string header = csv.substr(0, csv.find('\n'));
    EXPECT_EQ(header.rfind("kind,config.overlap.a,config.overlap.b,config.overlap.c,", 0), 0u);
    EXPECT_NE(header.find(",lambda_before,lambda_after,"), std::string::npos);
    EXPECT_NE(header.find("verdict.conservation.pass,verdict.conservation.deviation,verdict.conservation.tolerance"),
              std::string::npos);
}

TEST(Run, ConservationWorkedExampleFails) {
    ScenarioConfig c;
    c.kind = ScenarioKind::Conservation;
    const ScenarioReport r = run(c);
    EXPECT_NEAR(num(r, "lambda_before"), 0.65, 1e-11);
    EXPECT_NEAR(num(r, "lambda_after"), 0.59, 1e-11);
    EXPECT_NEAR(num(r, "delta_lambda"), -0.06, 1e-11);
    EXPECT_NEAR(num(r, "gram_condition.phase_deviation"), 0.2, 1e-11);
    EXPECT_NEAR(num(r, "gram_condition.modulus_deviation"), 0.2, 1e-11);
    EXPECT_FALSE(r.find_verdict("conservation")->pass);
    EXPECT_FALSE(r.all_pass());
}

TEST(Run, ConservationOnSurfacePasses) {
    ScenarioConfig c;
    c.kind = ScenarioKind::Conservation;
    c.b = c.a * c.c;
    const ScenarioReport r = run(c);
    EXPECT_TRUE(r.find_verdict("conservation")->pass);
    EXPECT_TRUE(std::get<bool>(*r.find("cloner.consistent")));
    EXPECT_TRUE(r.all_pass());
}

TEST(Run, PhaseOnlyMismatchSeparatesTheTwoDeviations) {
    ScenarioConfig c;
    c.kind = ScenarioKind::Conservation;
    c.b = c.a * c.c;
    c.b_phase = kPi / 2;
    const ScenarioReport r = run(c);
    EXPECT_NEAR(num(r, "gram_condition.modulus_deviation"), 0.0, 1e-12);
    EXPECT_NEAR(num(r, "gram_condition.phase_deviation"), 0.3 * std::sqrt(2.0), 1e-11);
    EXPECT_FALSE(std::get<bool>(*r.find("cloner.consistent")));
    // the leading eigenvalues only see moduli
    EXPECT_TRUE(r.find_verdict("conservation")->pass);
}

TEST(Run, NosignalIsometricMachineDoesNotSignal) {
    ScenarioConfig c;
    c.machine_mode = MachineMode::LinearExtension;
    const ScenarioReport r = run(c);
    EXPECT_LT(num(r, "signalling_magnitude"), 1e-12);
    EXPECT_TRUE(r.find_verdict("no_signalling")->pass);
    EXPECT_TRUE(r.all_pass());
}

TEST(Run, NosignalWishfulMachineSignals) {
    const ScenarioReport r = run(ScenarioConfig{});
    EXPECT_NEAR(num(r, "signalling_magnitude"), 0.43727938693663038, 1e-11);
    EXPECT_FALSE(r.find_verdict("no_signalling")->pass);
    EXPECT_TRUE(r.find_verdict("bob_before_maximally_mixed")->pass);
    EXPECT_TRUE(r.find_verdict("sign_reading_invariance")->pass);
    EXPECT_FALSE(std::get<bool>(*r.find("machine.consistent")));
    EXPECT_EQ(std::get<std::int64_t>(*r.find("machine.rules")), 8);
}

TEST(Run, GramEquivalence) {
    ScenarioConfig c;
    c.kind = ScenarioKind::GramEquivalence;
    EXPECT_TRUE(run(c).all_pass());
    c.mismatch = 0.3;
    const ScenarioReport bad = run(c);
    EXPECT_FALSE(std::get<bool>(*bad.find("reconstructed")));
    EXPECT_FALSE(bad.find_verdict("gram_match")->pass);
    c.family_size = 1;
    EXPECT_THROW(run(c), ConfigError);
}

TEST(Run, Deterministic) {
    ScenarioConfig c;
    c.kind = ScenarioKind::GramEquivalence;
    EXPECT_EQ(render(run(c), OutputFormat::Json), render(run(c), OutputFormat::Json));
    EXPECT_EQ(render(run(ScenarioConfig{}), OutputFormat::Csv), render(run(ScenarioConfig{}), OutputFormat::Csv));
}

TEST(Sweep, AxisParsing) {
    const SweepAxis a = parse_axis("overlap.b=0:1:0.1");
    EXPECT_EQ(a.values().size(), 11u);
    EXPECT_EQ(a.values().back(), 1.0);
    EXPECT_EQ(parse_axis("basis2.psi.theta=0:pi/2:pi/8").values().size(), 5u);
    EXPECT_EQ(parse_axis("overlap.b=0.3").values(), std::vector<double>{0.3});
    EXPECT_THROW(parse_axis("overlap.b"), ConfigError);
    EXPECT_THROW(parse_axis("machine.mode=0:1:1"), ConfigError);
    EXPECT_THROW(parse_axis("overlap.b=1:0:0.1"), ConfigError);
    EXPECT_THROW(parse_axis("overlap.b=0:1:0"), ConfigError);
    EXPECT_THROW(parse_axis("overlap.b=0:1"), ConfigError);
}

TEST(Sweep, EmptyGridRejected) { EXPECT_THROW(sweep(ScenarioConfig{}, {}), ConfigError); }

TEST(Sweep, OutOfRangePointRejected) {
    ScenarioConfig c;
    c.kind = ScenarioKind::Conservation;
    EXPECT_THROW(sweep(c, {parse_axis("overlap.a=0:1.5:0.5")}), ConfigError);
}

TEST(Sweep, ConservationGridMatchesClosedForm) {
    ScenarioConfig c;
    c.kind = ScenarioKind::Conservation;
    const auto rs = sweep(c, {parse_axis("overlap.a=0:1:0.1"), parse_axis("overlap.b=0:1:0.1"),
                              parse_axis("overlap.c=0:1:0.1")},
                          4);
    ASSERT_EQ(rs.size(), 1331u);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const double a = num(rs[i], "config.overlap.a");
        const double b = num(rs[i], "config.overlap.b");
        const double cc = num(rs[i], "config.overlap.c");
        // first axis slowest
        EXPECT_NEAR(a, static_cast<double>(i / 121) / 10, 1e-12);
        EXPECT_NEAR(cc, static_cast<double>(i % 11) / 10, 1e-12);
        EXPECT_NEAR(num(rs[i], "delta_lambda"), (a * a * cc - a * b) / 2, 1e-11);
    }
}

TEST(Sweep, WorkerCountDoesNotChangeOutput) {
    ScenarioConfig c;
    const std::vector<SweepAxis> axes{parse_axis("basis2.psi.theta=0:pi:pi/8")};
    EXPECT_EQ(render(sweep(c, axes, 1), OutputFormat::Csv), render(sweep(c, axes, 8), OutputFormat::Csv));
}

TEST(Sweep, IdenticalBasesGiveZeroSignal) {
    ScenarioConfig c;
    c.basis2_alpha.theta = 0.0;
    const auto rs = sweep(c, {parse_axis("basis2.psi.theta=0:pi/2:pi/8")});
    ASSERT_EQ(rs.size(), 5u);
    EXPECT_LT(num(rs[0], "signalling_magnitude"), 1e-12);
    EXPECT_GT(num(rs[1], "signalling_magnitude"), 1e-6);
}

TEST(Sweep, SinglePointEqualsRun) {
    ScenarioConfig c;
    c.kind = ScenarioKind::Conservation;
    const auto rs = sweep(c, {parse_axis("overlap.b=0.3")});
    ASSERT_EQ(rs.size(), 1u);
    c.b = 0.3;
    EXPECT_EQ(rs[0], run(c));
}

TEST(Sweep, RendersAsOneTable) {
    ScenarioConfig c;
    c.kind = ScenarioKind::Conservation;
    const auto rs = sweep(c, {parse_axis("overlap.b=0:0.2:0.1")});
    const std::string csv = render(rs, OutputFormat::Csv);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
    EXPECT_EQ(parse_reports(csv, OutputFormat::Csv), rs);
    EXPECT_EQ(parse_reports(render(rs, OutputFormat::Json), OutputFormat::Json), rs);
}

TEST(Verify, DefaultRunPassesAndIsDeterministic) {
    const VerifyOptions opt;
    const auto first = verify(opt);
    for (const auto& r : first) EXPECT_TRUE(r.pass) << r.name << " " << r.value;
    EXPECT_EQ(render_checks(first, opt), render_checks(verify(opt), opt));
}

TEST(Verify, TightToleranceNamesResidualFailures) {
    VerifyOptions opt;
    opt.tolerance = 1e-15;
    const auto results = verify(opt);
    bool any = false;
    for (const auto& r : results) {
        EXPECT_EQ(r.tolerance, 1e-15);
        if (!r.pass) any = true;
    }
    EXPECT_TRUE(any);
    EXPECT_NE(render_checks(results, opt).find("FAIL  linalg.eigen_reconstruction"), std::string::npos);
}
