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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

// Batch experiment front-end: flat key=value config files, experiment
// dispatch, CSV time series and JSON summaries. Outputs are deterministic:
// identical config and build give byte-identical files.

namespace qdrive::cli {

enum class ExperimentKind {
  JcUnitary,
  JcDissipative,
  ClassicalCompare,
  BkIdentity,
  BkSweep,
};

const char* experiment_name(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_name(const std::string& name);

/// Parsed and validated experiment configuration with defaults resolved.
struct ExperimentConfig {
  ExperimentKind experiment;
  // physical parameters
  double g = 0.5;
  double theta = 0.2;
  std::optional<double> alpha;  // coherent drive amplitude (real)
  std::optional<int> fock_n;    // Fock drive state
  double beta = 1.0;
  int n_trunc = 0;  // 0 = derive from the drive state
  std::vector<double> nbar_list;
  std::optional<double> t_measure;  // bk-identity; default pi/(2 g sqrt(nbar))
  // numerical parameters
  double t_max = 0.0;  // 0 = experiment default
  double step = 1e-3;
  int stride = 1;
  // output names (joined onto the --out directory)
  std::string csv_out;
  std::string json_out;
};

/// Parse a flat `key = value` file (# comments). Unknown keys, missing
/// required fields and out-of-range values throw ValidationError naming the
/// field. `expected` pins the experiment (a mismatching `experiment` key in
/// the file is an error); pass nullopt to take it from the file, which then
/// must carry the key.
ExperimentConfig parse_config_file(const std::filesystem::path& path,
                                   std::optional<ExperimentKind> expected);
ExperimentConfig parse_config(std::istream& in, std::optional<ExperimentKind> expected,
                              const std::string& source_name = "<config>");

/// Resolved key=value view of a config, in fixed order (for `validate`).
std::vector<std::pair<std::string, std::string>> resolved_entries(
    const ExperimentConfig& config);

struct RunResult {
  std::vector<std::filesystem::path> outputs;
  std::string summary_line;  // one-line completion note
};

/// Run the experiment, writing its CSV/JSON outputs under out_dir.
/// ValidationError and IntegrationError propagate to the caller.
RunResult run(const ExperimentConfig& config, const std::filesystem::path& out_dir);

}  // namespace qdrive::cli
