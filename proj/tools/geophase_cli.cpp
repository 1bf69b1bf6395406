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

// Command-line front end: run, validate and sweep experiment configs.
//
// Exit codes: 0 success, 2 config error, 3 runtime error.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geophase/error.hpp"
#include "geophase/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::vector<std::string> split_values(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first != std::string::npos) out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

int report(const geophase::Error& e) {
  std::cerr << "geophase: " << e.what() << '\n';
  return e.code() == geophase::ErrorCode::ConfigInvalid ? kExitConfig : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric-phase experiment simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string output;
  bool analytic = false;
  std::string param;
  std::string values;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "JSON experiment config")->required();
    cmd->add_option("--seed", seed, "Override the config seed");
    cmd->add_option("--output", output, "Write the result table here instead of the config's output");
    cmd->add_flag("--analytic", analytic, "Exact expectation values, no sampling noise");
  };
  CLI::App* run_cmd = app.add_subcommand("run", "Run one experiment");
  add_common(run_cmd);
  CLI::App* validate_cmd = app.add_subcommand("validate", "Check a config without running it");
  add_common(validate_cmd);
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run a config once per value of one key");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--param", param, "Dotted key; bare names refer to parameters.<name>")->required();
  sweep_cmd->add_option("--values", values, "Comma-separated JSON literals or bare strings")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  geophase::Overrides overrides;
  overrides.seed = seed;
  if (!output.empty()) overrides.output_path = output;
  overrides.analytic = analytic;

  try {
    std::string text;
    try {
      text = geophase::read_text_file(config_path);
    } catch (const geophase::Error& e) {
      std::cerr << "geophase: " << e.what() << '\n';
      return kExitConfig;
    }

    if (*validate_cmd) {
      const auto diags = geophase::validate(text, overrides);
      for (const auto& d : diags) std::cerr << config_path << ": " << d.str() << '\n';
      if (!diags.empty()) return kExitConfig;
      std::cout << config_path << ": ok\n";
      return kExitOk;
    }

    geophase::ResultTable table;
    if (*run_cmd) {
      table = geophase::run(geophase::parse_config(text, overrides));
    } else {
      const auto list = split_values(values);
      if (list.empty()) {
        std::cerr << "geophase: --values is empty\n";
        return kExitConfig;
      }
      table = geophase::sweep(text, param, list, overrides);
    }
    if (!table.written_to) geophase::write_table(table, std::cout);
    return kExitOk;
  } catch (const geophase::Error& e) {
    return report(e);
  } catch (const std::exception& e) {
    std::cerr << "geophase: " << e.what() << '\n';
    return kExitRuntime;
  }
}
