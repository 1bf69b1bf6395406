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

#pragma once

// Experiment orchestration. Configs are JSON documents with schema_version 1:
//
//   { "schema_version": 1, "scenario": "chsh_polar", "seed": 7,
//     "output": "out.tsv", "analytic": true,
//     "parameters": { "gamma_grid": {"start": 0, "stop": "180 deg", "count": 33} } }
//
// Angles are radians, or strings with an explicit "deg" / "rad" suffix. Grids
// are arrays or {start, stop, count, endpoint} ranges. Unknown keys are errors.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "geophase/interferometry.hpp"

namespace geophase {

enum class Scenario { PolarimeterPhase, NonAdditivity, Interferogram, ChshPolar, ChshAzimuthal };

std::string_view to_string(Scenario s) noexcept;

struct PolarimeterPhaseParams {
  std::vector<double> purity_grid;
  std::vector<double> delta_grid;
  double xi = 0.25 * kPi;
  double zeta = 0.0;
  std::vector<double> eta_grid;
  double counts_per_point = 1e4;
  double noise_sigma = 0.0;
  int repeats = 1;
};

struct NonAdditivityParams {
  std::vector<double> purity_grid;
  double phi_g = 0.0;
  double phi_d = 0.0;
};

struct InterferogramParams {
  std::vector<double> phi_i_grid;
  double phi_ii = 0.0;
  Polarization polarization = Polarization::Up;
  double analysis_delta = 0.5 * kPi;
  std::vector<double> chi_grid;
  double counts_per_point = 1e4;
};

struct ChshParams {
  std::vector<double> gamma_grid;
  bool numerical = true;  // chsh_polar: optimizer instead of the closed form
  double total_counts = 1e4;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::ChshPolar;
  std::uint64_t seed = 0;
  std::optional<std::string> output_path;
  bool analytic = false;
  std::variant<PolarimeterPhaseParams, NonAdditivityParams, InterferogramParams, ChshParams> params;
  std::string canonical;  // compact JSON of the effective config, echoed in output
};

/// Command-line overrides applied on top of the config document.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_path;
  bool analytic = false;
};

struct Diagnostic {
  std::string path;  // e.g. "parameters.purity_grid[2]"; empty for the document
  std::string message;

  std::string str() const;
};

/// All schema violations in `text`; empty when valid.
std::vector<Diagnostic> validate(std::string_view text, const Overrides& overrides = {});

/// Throws ConfigInvalid listing every diagnostic.
ExperimentConfig parse_config(std::string_view text, const Overrides& overrides = {});

/// Reads a file; throws IoFailure when it cannot be read.
std::string read_text_file(const std::string& path);

struct ResultTable {
  std::vector<std::string> metadata;  // "key: value", written as "# key: value"
  std::string label_column;           // non-empty for sweeps
  std::vector<std::string> labels;    // one per row when label_column is set
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::optional<std::string> written_to;  // set by run / sweep after writing

  /// Throws InvalidArgument on a row whose width differs from columns.
  void add_row(std::vector<double> row);
};

/// Tab-separated, numbers as %.17g, so equal tables give equal bytes.
void write_table(const ResultTable& table, std::ostream& out);
std::string format_table(const ResultTable& table);

/// Runs the scenario; also writes the table when output_path is set
/// (IoFailure if that fails).
ResultTable run(const ExperimentConfig& config);

/// Runs `text` once per value with `key` (dotted path; a bare name is looked
/// up under "parameters") replaced. Values are JSON literals or bare strings.
/// Rows are concatenated under a leading column named `key`.
ResultTable sweep(std::string_view text, const std::string& key, const std::vector<std::string>& values,
                  const Overrides& overrides = {});

}  // namespace geophase
