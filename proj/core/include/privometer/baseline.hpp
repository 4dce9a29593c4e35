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

#ifndef PRIVOMETER_BASELINE_HPP_
#define PRIVOMETER_BASELINE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "privometer/dataset.hpp"
#include "privometer/encode.hpp"
#include "privometer/learners.hpp"
#include "privometer/metrics.hpp"

namespace privometer {

// How non-members are turned into baseline measurements.
//  relaxed:  remove all selected non-members at once, fit once on the rest,
//            predict them all from that single fit.
//  complete: leave-one-out — for each selected individual, fit on everything
//            except that one row, predict that row, then pool the outcomes.
enum class BaselineMode { relaxed, complete };

std::string to_string(BaselineMode mode);
BaselineMode baseline_mode_from_string(const std::string& name);

// Which concrete measure a reported coverage number is. Coverage is an
// umbrella word; every report must say which measure it carries.
enum class CoverageKind { recall, prediction_rate };

std::string to_string(CoverageKind kind);

// One measurement condition: what the observer already knows (`known`) and
// what they try to infer (`secret`). A categorical secret may be narrowed to
// a single value of interest; a continuous secret carries the relative error
// bound under which a prediction counts as correct.
struct ConditionKey {
  std::vector<std::string> known;  // canonicalized: sorted, deduplicated
  std::string secret;
  std::optional<std::string> secret_value;  // categorical secrets only
  std::optional<double> epsilon;            // continuous secrets only

  // Stable one-line identity, e.g. "secret=s|known=a,b|value=v|eps=0.05".
  // Used as a cache key and in report labels.
  std::string describe() const;
};

// Checks the condition against a dataset: columns exist, secret is not
// known, epsilon is present exactly for continuous secrets, secret_value
// only for categorical ones. Also canonicalizes `known` in place.
void validate_condition(const Dataset& d, ConditionKey& condition);

// Everything configurable about the analysis fit on the baseline dataset.
struct LearnerConfig {
  LearnerKind kind = LearnerKind::auto_best;
  LearnerSettings settings;
  // Confidence below which categorical predictions abstain.
  double p_threshold = 0.0;
  // Complete mode refits once per individual; above this many individuals a
  // seeded subsample keeps the number of fits desk-scale.
  std::uint32_t complete_budget = 500;

  // Human-readable analysis identity for reports, e.g. "logistic_l1(c=1)".
  std::string describe(LearnerKind resolved) const;
};

// Precision and coverage of one prediction set, with the raw counts they
// were computed from (so reports can be recomputed exactly).
struct ScoredSet {
  Counts counts;
  double precision = 0.0;
  double coverage = 0.0;
  CoverageKind coverage_kind = CoverageKind::prediction_rate;
};

// Scores predictions against truths under the condition's rules:
//  - categorical: a non-abstained prediction is a true positive iff it
//    equals the true label; abstentions count as np; coverage is the
//    prediction rate.
//  - categorical with secret_value v: cast to the binary task "is it v".
//    Predicting v is the positive class; any other outcome — another label
//    or an abstention — is negative. Coverage is recall of v.
//  - continuous: correct iff within the condition's relative error bound;
//    coverage is the prediction rate.
// Undefined measures raise UndefinedMeasureError, never a silent number.
ScoredSet score_predictions(const ConditionKey& condition,
                            ColumnKind target_kind,
                            const std::vector<Prediction>& predictions,
                            const std::vector<std::string>& truth_labels,
                            const Eigen::VectorXd& truth_values);

// A baseline measurement: the privacy-neutral (precision, coverage) pair
// that any attack must beat before its predictions reveal anything.
struct BaselineResult {
  ConditionKey condition;
  BaselineMode mode = BaselineMode::relaxed;
  double p_base = 0.0;
  double coverage_base = 0.0;
  CoverageKind coverage_kind = CoverageKind::prediction_rate;
  LearnerKind learner_used = LearnerKind::majority;
  std::string analysis_descriptor;
  std::size_t n_targets = 0;
  Counts counts;
  bool converged = true;

  // The rows that were scored, with the per-row predictions and truths —
  // kept so comparisons can assert they scored exactly the same set.
  std::vector<std::uint32_t> scored_target_ids;
  std::vector<Prediction> predictions;
  std::vector<std::string> truth_labels;
  Eigen::VectorXd truth_values;
};

// A relaxed-mode fit kept around so several measurements (threshold sweeps,
// echo fixtures) can reuse the single fitted model.
struct PreparedBaseline {
  ConditionKey condition;
  ColumnKind target_kind = ColumnKind::categorical;
  LearnerKind learner_used = LearnerKind::majority;
  std::string analysis_descriptor;
  bool converged = true;
  FittedModel model;
  FeatureMatrix targets_x;
  std::vector<std::string> truth_labels;
  Eigen::VectorXd truth_values;
};

// Fits the condition's analysis on `analysis_set` and prepares to predict
// `targets`. The two datasets must share the condition's columns. `seed`
// drives only the model-selection split when the learner is auto_best: for
// categorical secrets the candidates (majority first, then logistic_l1) are
// compared on a held-out fifth of the analysis set and the winner is refit
// on all of it; continuous secrets resolve to lasso.
PreparedBaseline prepare_against(const Dataset& analysis_set,
                                 const Dataset& targets,
                                 ConditionKey condition,
                                 const LearnerConfig& learner_cfg,
                                 std::uint64_t seed);

// Predicts the prepared targets at one threshold and scores them.
BaselineResult measure_prepared(const PreparedBaseline& prepared,
                                double p_threshold);

// prepare_against + measure_prepared at the config's threshold. This is the
// prior-framework comparison mode: `analysis_set` may be an externally
// produced anonymized or synthetic dataset instead of the member remainder.
BaselineResult baseline_against(const Dataset& analysis_set,
                                const Dataset& targets,
                                const ConditionKey& condition,
                                const LearnerConfig& learner_cfg,
                                std::uint64_t seed);

// Splits off `non_member_count` seeded non-members and prepares the relaxed
// baseline against the remainder (one fit).
PreparedBaseline prepare_baseline(const Dataset& original,
                                  const ConditionKey& condition,
                                  const LearnerConfig& learner_cfg,
                                  std::uint32_t non_member_count,
                                  std::uint64_t seed);

// The full baseline measurement. Relaxed mode is
// prepare_baseline + measure_prepared. Complete mode selects the same
// non-members, then refits per individual on everything-except-that-row
// (subsampling to learner_cfg.complete_budget individuals when there are
// more); an auto_best learner is resolved once, on the relaxed member split,
// so the whole measurement reports a single analysis.
BaselineResult compute_baseline(const Dataset& original,
                                const ConditionKey& condition,
                                const LearnerConfig& learner_cfg,
                                BaselineMode mode,
                                std::uint32_t non_member_count,
                                std::uint64_t seed);

// One point of a precision / prediction-rate trade-off sweep. `p_base` is
// empty when every target abstained at this threshold — an explicit
// no-prediction point rather than a fabricated number.
struct SweepPoint {
  double p_thresh = 0.0;
  std::optional<double> p_base;
  double prediction_rate = 0.0;
};

// Re-thresholds one prepared (categorical, not value-narrowed) baseline at
// each given threshold. All points share the single fitted model; only the
// abstention rule moves.
std::vector<SweepPoint> threshold_sweep(const PreparedBaseline& prepared,
                                        const std::vector<double>& thresholds);

// One row of the replication study.
struct ReplicationRow {
  double fraction = 0.0;
  ConditionKey condition;
  LearnerKind learner_kind = LearnerKind::auto_best;  // as configured
  double p_base = 0.0;
  double coverage_base = 0.0;
  CoverageKind coverage_kind = CoverageKind::prediction_rate;
  double delta_vs_f0 = 0.0;
  bool flagged = false;  // |delta| > 0.05
  bool converged = true;
};

struct ReplicationReport {
  std::vector<double> fractions;  // with 0 prepended when absent
  std::vector<ReplicationRow> rows;
  std::size_t n_targets = 0;
};

// Measures how sensitive baselines are to within-dataset dependence by
// replicating a fraction of rows and re-measuring. The non-member targets
// are fixed from the unreplicated split, so every fraction scores the same
// individuals; their replicas stay in the fitting set — that is the
// dependence being probed. Fraction 0 is the undisturbed reference and is
// prepended when missing; rows are flagged when |p_base - reference| > 0.05.
ReplicationReport replication_study(const Dataset& original,
                                    const std::vector<double>& fractions,
                                    const std::vector<ConditionKey>& conditions,
                                    const std::vector<LearnerConfig>& learner_cfgs,
                                    std::uint32_t non_member_count,
                                    std::uint64_t seed);

// A pair of rows closer than the scan threshold.
struct NearDuplicate {
  std::uint32_t id_a = 0;
  std::uint32_t id_b = 0;
  double distance = 0.0;
};

// Scans for suspiciously close row pairs: all columns are encoded (one-hot /
// standardized), and pairs with euclidean distance divided by sqrt(feature
// count) below tau are reported. The scan only flags — it never removes
// rows, so the audit trail stays intact.
std::vector<NearDuplicate> flag_near_duplicates(const Dataset& d, double tau);

}  // namespace privometer

#endif  // PRIVOMETER_BASELINE_HPP_
