// Copyright 2026 The Privometer Authors
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

#ifndef PRIVOMETER_COMMANDS_HPP_
#define PRIVOMETER_COMMANDS_HPP_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "privometer/config.hpp"

namespace privometer {

// One summary file a command produced, by basename (e.g.
// "baseline_summary.csv" or "carlini_pr.csv").
struct CsvFile {
  std::string name;
  std::string text;
};

// What a command computed and where it was persisted. The run directory is
// append-only: <out>/<command>-<confighash>/run-NNN, holding
// resolved_config.json, <command>_report.json, the CSV files, and
// run_meta.json. The wall-clock timestamp lives only in run_meta.json so
// every other file is byte-stable across reruns of the same configuration.
struct CommandResult {
  std::string run_dir;
  nlohmann::json report;
  std::vector<CsvFile> csv_files;
  int exit_code = 0;
};

// Measures the privacy-neutral baseline for every condition in the config.
CommandResult cmd_baseline(const RunConfig& config);

// Re-thresholds one prepared baseline per categorical condition across the
// config's confidence thresholds.
CommandResult cmd_sweep(const RunConfig& config);

// Scores attack submission files against the coverage-matched baseline.
// The config must expand to exactly one condition — the one the attacks
// target. A submission that fails to ingest or score is reported in place
// and makes the exit code 1; valid submissions are unaffected.
CommandResult cmd_compare(const RunConfig& config,
                          const std::vector<std::string>& attack_paths);

// Replicates a fraction of rows and re-measures every (condition, learner)
// baseline, flagging fractions that move the baseline by more than 0.05.
CommandResult cmd_replication(const RunConfig& config);

// ROC curves to re-report: files with `fpr,tpr` rows, plus optionally the
// two bundled literature curves.
struct RocInputs {
  std::vector<std::string> roc_paths;
  bool bundled = false;
};

// Re-reports ROC operating points as precision/recall under the config's
// base-rate skews. Needs no dataset and no randomness.
CommandResult cmd_roc2pr(const RunConfig& config, const RocInputs& inputs);

}  // namespace privometer

#endif  // PRIVOMETER_COMMANDS_HPP_
