// Copyright 2026 The qdrive Authors
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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qdrive/errors.hpp"
#include "qdrive/experiments.hpp"

// qdrive <experiment> --config <path> [--out <dir>]
// qdrive validate --config <path>
//
// Exit codes: 0 success, 1 validation error, 2 numerical failure.

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

int run_experiment(qdrive::cli::ExperimentKind kind, const std::string& config_path,
                   const std::string& out_dir) {
  const qdrive::cli::ExperimentConfig config =
      qdrive::cli::parse_config_file(config_path, kind);
  const qdrive::cli::RunResult result = qdrive::cli::run(config, out_dir);
  for (const auto& path : result.outputs) {
    std::cout << "wrote " << path.string() << "\n";
  }
  std::cout << result.summary_line << "\n";
  return kExitOk;
}

int run_validate(const std::string& config_path) {
  const qdrive::cli::ExperimentConfig config =
      qdrive::cli::parse_config_file(config_path, std::nullopt);
  for (const auto& [key, value] : qdrive::cli::resolved_entries(config)) {
    std::cout << key << " = " << value << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantized-drive work and heat simulator"};
  app.require_subcommand(1);

  struct SubSpec {
    qdrive::cli::ExperimentKind kind;
    const char* description;
  };
  const std::vector<SubSpec> subs = {
      {qdrive::cli::ExperimentKind::JcUnitary,
       "Unitary Jaynes-Cummings run: energy ledger CSV + summary"},
      {qdrive::cli::ExperimentKind::JcDissipative,
       "Damped Jaynes-Cummings run with the golden-rule dissipator"},
      {qdrive::cli::ExperimentKind::ClassicalCompare,
       "Quantized vs classical driving work comparison"},
      {qdrive::cli::ExperimentKind::BkIdentity,
       "Exclusive-work identity at one measurement time"},
      {qdrive::cli::ExperimentKind::BkSweep,
       "Deviation scaling sweep over mean photon numbers"},
  };

  struct SubState {
    CLI::App* cmd;
    qdrive::cli::ExperimentKind kind;
    std::string config_path;
    std::string out_dir = ".";
  };
  std::vector<std::unique_ptr<SubState>> states;
  for (const SubSpec& spec : subs) {
    auto state = std::make_unique<SubState>();
    state->kind = spec.kind;
    state->cmd = app.add_subcommand(qdrive::cli::experiment_name(spec.kind),
                                    spec.description);
    state->cmd->add_option("--config", state->config_path, "experiment config file")
        ->required();
    state->cmd->add_option("--out", state->out_dir, "output directory (default: .)");
    states.push_back(std::move(state));
  }

  std::string validate_config;
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "Parse a config, fill defaults, print it; no run");
  validate_cmd->add_option("--config", validate_config, "config file to check")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate_cmd->parsed()) {
      return run_validate(validate_config);
    }
    for (const auto& state : states) {
      if (state->cmd->parsed()) {
        return run_experiment(state->kind, state->config_path, state->out_dir);
      }
    }
    std::cerr << "error: no subcommand selected\n";
    return kExitValidation;
  } catch (const qdrive::ValidationError& err) {
    std::cerr << "validation error: " << err.what() << "\n";
    return kExitValidation;
  } catch (const qdrive::Error& err) {
    std::cerr << "numerical failure: " << err.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitNumerical;
  }
}
