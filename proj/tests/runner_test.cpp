// Copyright 2026 The geophase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "geophase/runner.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "geophase/bell_chsh.hpp"
#include "geophase/error.hpp"
#include "geophase/spin_core.hpp"

namespace geophase {
namespace {

namespace fs = std::filesystem;

std::size_t column(const ResultTable& t, const std::string& name) {
  const auto it = std::find(t.columns.begin(), t.columns.end(), name);
  EXPECT_NE(it, t.columns.end()) << name;
  return static_cast<std::size_t>(it - t.columns.begin());
}

bool has_diagnostic(const std::vector<Diagnostic>& d, const std::string& path, const std::string& fragment) {
  return std::any_of(d.begin(), d.end(), [&](const Diagnostic& x) {
    return x.path == path && x.message.find(fragment) != std::string::npos;
  });
}

const char* kPolarimeter = R"({
  "schema_version": 1, "scenario": "polarimeter_phase", "seed": 11,
  "parameters": {
    "purity_grid": [0.5, 1.0],
    "delta_grid": [0.2, 0.7],
    "eta_grid": {"start": 0, "stop": "360 deg", "count": 32, "endpoint": false},
    "counts_per_point": 10000,
    "repeats": 3
  }
})";

const char* kNonAdditivity = R"({
  "schema_version": 1, "scenario": "non_additivity",
  "parameters": {"purity_grid": {"start": 0.1, "stop": 1.0, "count": 10}, "phi_g": "45 deg", "phi_d": "45 deg"}
})";

const char* kAzimuthal = R"({
  "schema_version": 1, "scenario": "chsh_azimuthal", "analytic": true,
  "parameters": {"gamma_grid": {"start": 0, "stop": "360 deg", "count": 17, "endpoint": false}}
})";

const char* kInterferogram = R"({
  "schema_version": 1, "scenario": "interferogram", "analytic": true,
  "parameters": {"phi_i_grid": {"start": 0, "stop": 3, "count": 7}, "polarization": "down", "phi_ii": 0.4}
})";

TEST(Validate, AcceptsSampleConfigs) {
  for (const char* text : {kPolarimeter, kNonAdditivity, kAzimuthal, kInterferogram}) {
    const auto d = validate(text);
    EXPECT_TRUE(d.empty()) << (d.empty() ? "" : d.front().str());
  }
}

TEST(Validate, ReportsEveryProblemWithPaths) {
  const auto d = validate(R"({
    "schema_version": 1, "scenario": "polarimeter_phase", "colour": 3,
    "parameters": {"purity_grid": [0.5, 1.5], "delta_grid": [0.2], "eta_grid": [0, 1, 2], "bogus": 1}
  })");
  EXPECT_TRUE(has_diagnostic(d, "colour", "unknown key"));
  EXPECT_TRUE(has_diagnostic(d, "parameters.bogus", "unknown key"));
  EXPECT_TRUE(has_diagnostic(d, "parameters.purity_grid[1]", "purity out of [0,1]"));
  EXPECT_TRUE(has_diagnostic(d, "parameters.eta_grid", "at least 8 points"));
  EXPECT_EQ(d.size(), 4u);
}

TEST(Validate, StructuralErrors) {
  EXPECT_FALSE(validate("not json").empty());
  EXPECT_FALSE(validate("[1, 2]").empty());
  EXPECT_TRUE(has_diagnostic(validate(R"({"schema_version": 1, "parameters": {}})"), "scenario", ""));
  EXPECT_TRUE(has_diagnostic(validate(R"({"schema_version": 2, "scenario": "chsh_polar",
      "parameters": {"gamma_grid": [0]}})"), "schema_version", ""));
  EXPECT_TRUE(has_diagnostic(validate(R"({"schema_version": 1, "scenario": "nope", "parameters": {}})"), "scenario", ""));
}

TEST(Validate, EtaGridMustCoverPeriod) {
  const auto d = validate(R"({"schema_version": 1, "scenario": "polarimeter_phase",
    "parameters": {"purity_grid": [1], "delta_grid": [0.5],
                   "eta_grid": {"start": 0, "stop": 1, "count": 16}}})");
  EXPECT_TRUE(has_diagnostic(d, "parameters.eta_grid", "fringe period"));
}

TEST(Validate, ZeroPurityAndUnrealizableTargets) {
  EXPECT_TRUE(has_diagnostic(validate(R"({"schema_version": 1, "scenario": "polarimeter_phase",
      "parameters": {"purity_grid": [0], "delta_grid": [0.5]}})"), "parameters.purity_grid[0]", "nonzero"));
  EXPECT_TRUE(has_diagnostic(validate(R"({"schema_version": 1, "scenario": "non_additivity",
      "parameters": {"purity_grid": [1], "phi_g": 3, "phi_d": 3}})"), "parameters", ""));
}

TEST(Validate, AngleUnits) {
  const auto cfg = parse_config(R"({"schema_version": 1, "scenario": "non_additivity",
      "parameters": {"purity_grid": [1], "phi_g": "90 deg", "phi_d": "0.25 rad"}})");
  const auto& p = std::get<NonAdditivityParams>(cfg.params);
  EXPECT_NEAR(p.phi_g, 0.5 * kPi, 1e-15);
  EXPECT_EQ(p.phi_d, 0.25);
  EXPECT_TRUE(has_diagnostic(validate(R"({"schema_version": 1, "scenario": "non_additivity",
      "parameters": {"purity_grid": [1], "phi_g": "90 grad", "phi_d": 0}})"), "parameters.phi_g", "suffix"));
}

TEST(ParseConfig, ThrowsConfigInvalidAndAppliesOverrides) {
  try {
    parse_config(R"({"schema_version": 1})");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigInvalid);
  }
  Overrides o;
  o.seed = 99;
  o.analytic = true;
  const auto cfg = parse_config(kPolarimeter, o);
  EXPECT_EQ(cfg.seed, 99u);
  EXPECT_TRUE(cfg.analytic);
  EXPECT_EQ(cfg.scenario, Scenario::PolarimeterPhase);
}

TEST(ReadTextFile, MissingFileIsIoFailure) {
  try {
    read_text_file("/nonexistent/geophase.json");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoFailure);
  }
}

TEST(Run, DeterministicBytes) {
  const auto cfg = parse_config(kPolarimeter);
  EXPECT_EQ(format_table(run(cfg)), format_table(run(cfg)));
  Overrides other;
  other.seed = 12;
  EXPECT_NE(format_table(run(cfg)), format_table(run(parse_config(kPolarimeter, other))));
}

TEST(Run, AnalyticPolarimeterMatchesTheory) {
  Overrides o;
  o.analytic = true;
  const ResultTable t = run(parse_config(kPolarimeter, o));
  ASSERT_EQ(t.rows.size(), 4u);
  const auto th = column(t, "phi_theory"), est = column(t, "phi_estimate"), sd = column(t, "phi_sigma");
  for (const auto& row : t.rows) {
    EXPECT_NEAR(row[est], row[th], 1e-9);
    EXPECT_EQ(row[sd], 0.0);
  }
}

TEST(Run, NoisyPolarimeterWithinSpread) {
  const ResultTable t = run(parse_config(kPolarimeter));
  const auto th = column(t, "phi_theory"), est = column(t, "phi_estimate"), sd = column(t, "phi_sigma");
  for (const auto& row : t.rows) EXPECT_LT(std::abs(row[est] - row[th]), 5 * row[sd] + 1e-3);
}

TEST(Run, NonAdditivityGapShrinksToZero) {
  const ResultTable t = run(parse_config(kNonAdditivity));
  const auto gap = column(t, "gap");
  for (std::size_t i = 1; i < t.rows.size(); ++i) EXPECT_LT(std::abs(t.rows[i][gap]), std::abs(t.rows[i - 1][gap]));
  EXPECT_LT(std::abs(t.rows.back()[gap]), 1e-12);
}

TEST(Run, AzimuthalRestoresTsirelson) {
  const ResultTable t = run(parse_config(kAzimuthal));
  const auto s = column(t, "S"), raw = column(t, "S_uncorrected"), g = column(t, "gamma");
  for (const auto& row : t.rows) {
    EXPECT_NEAR(row[s], 2 * std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(row[raw], s_standard(row[g]), 1e-12);
  }
}

TEST(Run, InterferogramSlopeInMetadata) {
  const ResultTable t = run(parse_config(kInterferogram));
  EXPECT_EQ(t.rows.size(), 7u);
  EXPECT_NE(std::find(t.metadata.begin(), t.metadata.end(), "scenario: interferogram"), t.metadata.end());
  const auto it = std::find_if(t.metadata.begin(), t.metadata.end(),
                               [](const std::string& m) { return m.rfind("slope: ", 0) == 0; });
  ASSERT_NE(it, t.metadata.end());
  EXPECT_NEAR(std::stod(it->substr(7)), -1.0, 1e-9);
}

TEST(Run, WritesOutputFile) {
  const fs::path path = fs::temp_directory_path() / "geophase_runner_test.tsv";
  Overrides o;
  o.output_path = path.string();
  const ResultTable t = run(parse_config(kAzimuthal, o));
  ASSERT_TRUE(t.written_to);
  EXPECT_EQ(read_text_file(path.string()), format_table(t));
  fs::remove(path);
  o.output_path = "/nonexistent/dir/out.tsv";
  try {
    run(parse_config(kAzimuthal, o));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoFailure);
  }
}

TEST(ResultTable, RowWidthChecked) {
  ResultTable t;
  t.columns = {"a", "b"};
  t.add_row({1.0, 2.0});
  EXPECT_THROW(t.add_row({1.0}), Error);
  const std::string s = format_table(t);
  EXPECT_NE(s.find("a\tb\n1\t2\n"), std::string::npos);
}

TEST(Sweep, OneBlockPerValue) {
  const ResultTable t = sweep(kNonAdditivity, "phi_d", {"0.1", "\"30 deg\"", "0.5"});
  EXPECT_EQ(t.label_column, "phi_d");
  EXPECT_EQ(t.rows.size(), 30u);
  ASSERT_EQ(t.labels.size(), 30u);
  EXPECT_EQ(t.labels.front(), "0.1");
  EXPECT_EQ(t.labels.back(), "0.5");
  try {
    sweep(kNonAdditivity, "phi_d", {"\"abc\""});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigInvalid);
  }
}

#ifdef GEOPHASE_CLI_PATH
int cli(const std::string& args) {
  const std::string cmd = std::string(GEOPHASE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodes) {
  const fs::path dir = fs::temp_directory_path() / "geophase_cli_test";
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  const std::string good = write("good.json", kAzimuthal);
  const std::string bad = write("bad.json", R"({"schema_version": 1, "scenario": "chsh_polar"})");
  EXPECT_EQ(cli("run " + good), 0);
  EXPECT_EQ(cli("validate " + good), 0);
  EXPECT_EQ(cli("run " + good + " --seed 5 --analytic --output " + (dir / "o.tsv").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "o.tsv"));
  EXPECT_EQ(cli("sweep " + good + " --param total_counts --values 100,200"), 0);
  EXPECT_EQ(cli("validate " + bad), 2);
  EXPECT_EQ(cli("run " + bad), 2);
  EXPECT_EQ(cli("run " + (dir / "missing.json").string()), 2);
  EXPECT_EQ(cli("frobnicate"), 2);
  EXPECT_EQ(cli("run " + good + " --output /nonexistent/dir/o.tsv"), 3);
  fs::remove_all(dir);
}
#endif

}  // namespace
}  // namespace geophase
