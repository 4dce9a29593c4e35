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

#include "privometer/attack.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <map>
#include <set>
#include <utility>

#include "privometer/csv.hpp"
#include "privometer/errors.hpp"

namespace privometer {
namespace {

std::uint32_t parse_row_id(const std::string& text) {
  std::uint32_t id = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, id);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("not a row id: '" + text + "'");
  }
  return id;
}

std::string cache_key_for(const ConditionKey& condition,
                          const std::vector<std::uint32_t>& predicted_ids,
                          std::uint64_t seed) {
  std::string key = condition.describe() + "|targets=";
  for (std::size_t i = 0; i < predicted_ids.size(); ++i) {
    if (i > 0) key += ",";
    key += std::to_string(predicted_ids[i]);
  }
  key += "|seed=" + std::to_string(seed);
  return key;
}

// Assembles the comparison for a submission with a non-empty predicted set,
// given the already-measured baseline for exactly that set.
ComparisonReport build_report(const AttackSubmission& submission,
                              const Dataset& original,
                              const std::vector<std::uint32_t>& predicted,
                              const BaselineResult& base) {
  ComparisonReport report;
  report.condition = submission.condition;
  report.attack_name = submission.attack_name;
  report.n_targets = submission.n_targets();
  report.n_predicted = predicted.size();
  report.c_atk = static_cast<double>(report.n_predicted) /
                 static_cast<double>(report.n_targets);
  report.predicted_ids_sorted = predicted;

  // Score the attack on its predicted rows, ascending by row id, against
  // the original dataset's true values.
  const std::size_t secret_col =
      original.column_index(submission.condition.secret);
  const ColumnKind secret_kind = original.column(secret_col).spec.kind;
  std::vector<Prediction> attack_preds;
  std::vector<std::string> truth_labels;
  Eigen::VectorXd truth_values(static_cast<Eigen::Index>(predicted.size()));
  attack_preds.reserve(predicted.size());
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const std::uint32_t id = predicted[i];
    const auto it = std::find(submission.target_ids.begin(),
                              submission.target_ids.end(), id);
    const std::size_t at =
        static_cast<std::size_t>(it - submission.target_ids.begin());
    attack_preds.push_back(submission.predictions[at]);
    const std::size_t pos = *original.position_of_row_id(id);
    if (secret_kind == ColumnKind::categorical) {
      truth_labels.push_back(original.categorical_label(pos, secret_col));
    } else {
      truth_values[static_cast<Eigen::Index>(i)] =
          original.continuous_value(pos, secret_col);
    }
  }
  if (secret_kind == ColumnKind::categorical) truth_values.resize(0);

  const ScoredSet attack_scored =
      score_predictions(submission.condition, secret_kind, attack_preds,
                        truth_labels, truth_values);
  report.p_atk = attack_scored.precision;
  report.coverage_kind = attack_scored.coverage_kind;
  report.attack_counts = attack_scored.counts;

  report.p_base = base.p_base;
  report.baseline_descriptor = base.analysis_descriptor;
  report.baseline_converged = base.converged;
  report.baseline_scored_ids = base.scored_target_ids;
  std::sort(report.baseline_scored_ids.begin(),
            report.baseline_scored_ids.end());

  if (*report.p_base == 1.0) {
    report.outcome = ComparisonOutcome::baseline_already_perfect;
    return report;  // no improvement is possible; pi stays unset
  }
  report.pi = precision_improvement(*report.p_atk, *report.p_base);
  report.outcome = ComparisonOutcome::ok;
  return report;
}

}  // namespace

std::vector<std::uint32_t> AttackSubmission::predicted_ids() const {
  std::vector<std::uint32_t> ids;
  for (std::size_t i = 0; i < target_ids.size(); ++i) {
    if (!predictions[i].abstained) ids.push_back(target_ids[i]);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::string to_string(ComparisonOutcome outcome) {
  switch (outcome) {
    case ComparisonOutcome::ok: return "ok";
    case ComparisonOutcome::no_prediction: return "no_prediction";
    case ComparisonOutcome::baseline_already_perfect:
      return "baseline_already_perfect";
  }
  throw ValidationError("unknown comparison outcome");
}

AttackSubmission parse_attack_csv(const std::string& csv_text,
                                  const std::string& name,
                                  const Dataset& original,
                                  const ConditionKey& condition) {
  ConditionKey cond = condition;
  validate_condition(original, cond);
  const std::size_t secret_col = original.column_index(cond.secret);
  const ColumnKind secret_kind = original.column(secret_col).spec.kind;

  const CsvTable table = parse_csv(csv_text);
  if (table.header.size() != 2 || table.header[0] != "target_id" ||
      table.header[1] != "prediction") {
    throw ValidationError(
        "attack file must have the header 'target_id,prediction'");
  }

  AttackSubmission sub;
  sub.condition = std::move(cond);
  sub.attack_name = name;
  std::set<std::uint32_t> seen;
  for (const auto& row : table.rows) {
    const std::uint32_t id = parse_row_id(row[0]);
    if (!original.position_of_row_id(id).has_value()) {
      throw ValidationError("attack '" + name + "' targets unknown row id " +
                            std::to_string(id));
    }
    if (!seen.insert(id).second) {
      throw ValidationError("attack '" + name + "' predicts row id " +
                            std::to_string(id) + " more than once");
    }
    Prediction pred;
    if (row[1].empty()) {
      pred.abstained = true;
    } else if (secret_kind == ColumnKind::continuous) {
      if (!parses_as_double(row[1])) {
        throw ValidationError("attack '" + name + "' predicts '" + row[1] +
                              "' for the continuous secret '" +
                              sub.condition.secret + "'");
      }
      pred.value = parse_double(row[1]);
      pred.confidence = 1.0;
    } else {
      pred.label = row[1];
      pred.confidence = 1.0;
    }
    sub.target_ids.push_back(id);
    sub.predictions.push_back(std::move(pred));
  }
  if (sub.target_ids.empty()) {
    throw ValidationError("attack '" + name + "' lists no targets");
  }
  return sub;
}

AttackSubmission ingest_attack(const std::string& path,
                               const Dataset& original,
                               const ConditionKey& condition) {
  const std::string name = std::filesystem::path(path).stem().string();
  return parse_attack_csv(read_text_file(path), name, original, condition);
}

BaselineResult comparison_baseline(
    const Dataset& original, const ConditionKey& condition,
    const std::vector<std::uint32_t>& predicted_ids,
    const LearnerConfig& learner_cfg, std::uint64_t seed) {
  if (predicted_ids.empty()) {
    throw ValidationError("no predicted rows to measure a baseline on");
  }
  std::vector<std::uint32_t> positions;
  positions.reserve(predicted_ids.size());
  for (const std::uint32_t id : predicted_ids) {
    const std::optional<std::size_t> pos = original.position_of_row_id(id);
    if (!pos.has_value()) {
      throw ValidationError("predicted row id " + std::to_string(id) +
                            " is not in the dataset");
    }
    positions.push_back(static_cast<std::uint32_t>(*pos));
  }
  std::sort(positions.begin(), positions.end());

  const Dataset targets = original.select_rows(positions);
  const Dataset analysis_set = original.drop_rows(positions);

  // The threshold is forced to 0: the baseline must predict every one of the
  // attack's predicted rows, so the two sides share their coverage exactly.
  LearnerConfig cfg = learner_cfg;
  cfg.p_threshold = 0.0;
  return baseline_against(analysis_set, targets, condition, cfg, seed);
}

ComparisonReport compare(const AttackSubmission& submission,
                         const Dataset& original,
                         const LearnerConfig& learner_cfg,
                         std::uint64_t seed) {
  if (submission.n_targets() == 0) {
    throw ValidationError("submission lists no targets");
  }
  const std::vector<std::uint32_t> predicted = submission.predicted_ids();
  if (predicted.empty()) {
    ComparisonReport report;
    report.condition = submission.condition;
    report.attack_name = submission.attack_name;
    report.n_targets = submission.n_targets();
    report.n_predicted = 0;
    report.c_atk = 0.0;
    report.outcome = ComparisonOutcome::no_prediction;
    return report;  // nothing was predicted; there is nothing to compare
  }
  const BaselineResult base = comparison_baseline(
      original, submission.condition, predicted, learner_cfg, seed);
  return build_report(submission, original, predicted, base);
}

std::vector<BatchEntry> batch_compare(
    const std::vector<AttackSubmission>& submissions, const Dataset& original,
    const LearnerConfig& learner_cfg, std::uint64_t seed, BatchStats* stats) {
  std::vector<BatchEntry> entries;
  entries.reserve(submissions.size());

  // Write-once baseline cache: submissions sharing (condition, predicted
  // set, seed) reuse one fit. The predicted set is part of the key because
  // the baseline is fit with those rows removed.
  std::map<std::string, BaselineResult> cache;
  BatchStats local;

  for (const AttackSubmission& sub : submissions) {
    BatchEntry entry;
    entry.attack_name = sub.attack_name;
    try {
      if (sub.n_targets() == 0) {
        throw ValidationError("submission lists no targets");
      }
      const std::vector<std::uint32_t> predicted = sub.predicted_ids();
      if (predicted.empty()) {
        ComparisonReport report;
        report.condition = sub.condition;
        report.attack_name = sub.attack_name;
        report.n_targets = sub.n_targets();
        report.outcome = ComparisonOutcome::no_prediction;
        entry.report = std::move(report);
      } else {
        const std::string key = cache_key_for(sub.condition, predicted, seed);
        const auto found = cache.find(key);
        if (found == cache.end()) {
          ++local.baseline_fits;
          cache.emplace(key,
                        comparison_baseline(original, sub.condition,
                                            predicted, learner_cfg, seed));
        } else {
          ++local.cache_hits;
        }
        entry.report = build_report(sub, original, predicted, cache.at(key));
      }
    } catch (const Error& e) {
      entry.error = e.what();
    }
    entries.push_back(std::move(entry));
  }
  if (stats != nullptr) *stats = local;
  return entries;
}

}  // namespace privometer
