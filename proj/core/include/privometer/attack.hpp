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

#ifndef PRIVOMETER_ATTACK_HPP_
#define PRIVOMETER_ATTACK_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "privometer/baseline.hpp"
#include "privometer/dataset.hpp"

namespace privometer {

// Externally produced attack output: for each targeted row, either a
// predicted secret value or a deliberate abstention. The predicted subset
// (non-abstained targets) is what both the attack and its baseline are
// scored on.
struct AttackSubmission {
  ConditionKey condition;
  std::string attack_name;
  std::vector<std::uint32_t> target_ids;  // unique, in file order
  std::vector<Prediction> predictions;    // parallel; abstained = no guess

  std::size_t n_targets() const { return target_ids.size(); }
  // Row ids the attack actually predicted, ascending.
  std::vector<std::uint32_t> predicted_ids() const;
};

// Reads a submission from a CSV file with header `target_id,prediction`.
// An empty prediction cell means the attack abstained on that target.
// Every id must name a row of `original`; ids may not repeat; predictions
// for continuous secrets must be numbers. The submission is named after the
// file stem.
AttackSubmission ingest_attack(const std::string& path,
                               const Dataset& original,
                               const ConditionKey& condition);

// Same parse/validate path from in-memory CSV text, with an explicit name.
AttackSubmission parse_attack_csv(const std::string& csv_text,
                                  const std::string& name,
                                  const Dataset& original,
                                  const ConditionKey& condition);

enum class ComparisonOutcome {
  ok,                        // attack and baseline both measured; pi present
  no_prediction,             // the attack abstained everywhere; nothing to
                             // compare, no pi
  baseline_already_perfect,  // p_base = 1: no improvement is possible, so pi
                             // is reported as this outcome, not a number
};

std::string to_string(ComparisonOutcome outcome);

// The coverage-matched comparison of one attack against its baseline.
struct ComparisonReport {
  ConditionKey condition;
  std::string attack_name;
  ComparisonOutcome outcome = ComparisonOutcome::ok;

  std::size_t n_targets = 0;    // |targets|
  std::size_t n_predicted = 0;  // |predicted subset|
  double c_atk = 0.0;           // n_predicted / n_targets — shared coverage
  std::optional<double> p_atk;
  std::optional<double> p_base;
  std::optional<double> pi;
  CoverageKind coverage_kind = CoverageKind::prediction_rate;
  Counts attack_counts;

  std::string baseline_descriptor;
  bool baseline_converged = true;
  // Both id lists are ascending; they must be equal sets — the whole point
  // of the procedure is that baseline and attack are scored on the same
  // rows. Reports carry both so that equality stays checkable.
  std::vector<std::uint32_t> predicted_ids_sorted;
  std::vector<std::uint32_t> baseline_scored_ids;
};

// The baseline a comparison uses: the predicted rows are all removed from
// `original` at once, the condition's analysis is fit on the remainder, and
// exactly those rows are predicted back — with the abstention threshold
// forced to 0 so the baseline's coverage matches the attack's by
// construction. Exposed so tests and tooling can reproduce the comparison's
// baseline bit for bit.
BaselineResult comparison_baseline(const Dataset& original,
                                   const ConditionKey& condition,
                                   const std::vector<std::uint32_t>& predicted_ids,
                                   const LearnerConfig& learner_cfg,
                                   std::uint64_t seed);

// Coverage-matched comparison:
//   1. the shared coverage is n_predicted / n_targets;
//   2. the attack's precision is scored on its predicted rows against the
//      original dataset's true values;
//   3. the baseline's precision is measured on exactly those same rows via
//      comparison_baseline;
//   4. pi = (p_atk - p_base) / (1 - p_base).
// An all-abstain submission yields a no_prediction report; a perfect
// baseline yields baseline_already_perfect (pi would be undefined).
ComparisonReport compare(const AttackSubmission& submission,
                         const Dataset& original,
                         const LearnerConfig& learner_cfg,
                         std::uint64_t seed);

// One entry of a batch comparison: either a report or that submission's
// error. Failures are isolated per submission.
struct BatchEntry {
  std::string attack_name;
  std::optional<ComparisonReport> report;
  std::optional<std::string> error;
};

struct BatchStats {
  std::size_t baseline_fits = 0;
  std::size_t cache_hits = 0;
};

// Compares each submission in input order. Baselines are cached by
// (condition, predicted row set, seed): submissions that predict the same
// rows under the same condition share one fit. The cache key includes the
// predicted set because the baseline is fit with those rows removed —
// different predicted sets need different fits.
std::vector<BatchEntry> batch_compare(
    const std::vector<AttackSubmission>& submissions, const Dataset& original,
    const LearnerConfig& learner_cfg, std::uint64_t seed,
    BatchStats* stats = nullptr);

}  // namespace privometer

#endif  // PRIVOMETER_ATTACK_HPP_
