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

#ifndef PRIVOMETER_METRICS_HPP_
#define PRIVOMETER_METRICS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace privometer {

// Outcome counts of a prediction run. `np` counts abstentions: targets where
// a prediction was possible but deliberately not made. An abstention is not a
// negative prediction; it has its own bucket.
struct Counts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;
  std::int64_t np = 0;
};

// Member:non-member ratio of the population an observer actually sees.
// m is the member weight (> 0), n the non-member weight (>= 0); only the
// ratio matters, so {1, 30} and {10, 300} are the same scenario.
struct SkewScenario {
  double m = 1.0;
  double n = 1.0;
};

// One operating point of a membership-attack ROC curve.
struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct PrPoint {
  double precision = 0.0;
  double recall = 0.0;
};

// (tp+tn) / (tp+fp+fn+tn). UndefinedMeasureError when the denominator is 0.
double accuracy(const Counts& c);

// tp / (tp+fp): how often a positive prediction is right.
// UndefinedMeasureError when there are no positive predictions.
double precision(const Counts& c);

// tp / (tp+fn): the fraction of actual positives found.
// UndefinedMeasureError when there are no actual positives.
double recall(const Counts& c);

// tp / (tp+fp+np): true positives over all possible predictions, counting
// abstentions in the denominator. UndefinedMeasureError when the denominator
// is 0.
double prediction_rate(const Counts& c);

// Recall of `value` after casting a multi-class prediction list to the
// binary task "is it `value`?". A prediction equal to value is positive;
// anything else — other labels or abstention (nullopt) — is negative.
// Preconditions: equal non-empty lengths; value occurs in truths.
double binary_recall_per_value(
    const std::vector<std::optional<std::string>>& predictions,
    const std::vector<std::string>& truths, const std::string& value);

// Relative-error correctness for continuous predictions:
// |pred - truth| <= epsilon * |truth|, with an absolute-equality fallback at
// truth = 0 (a zero truth admits only an exactly-zero prediction).
// epsilon must be > 0.
bool correct_continuous(double pred, double truth, double epsilon);

// (p_atk - p_base) / (1 - p_base): the achieved fraction of the best
// possible improvement over the baseline. Lies in
// [-p_base/(1-p_base), 1]; equals 1 iff p_atk = 1. p_base = 1 raises
// SaturatedBaselineError — a perfect baseline leaves nothing to improve and
// must be reported as its own outcome, never as a number.
double precision_improvement(double p_atk, double p_base);

// Re-express one ROC point under an observational skew:
//   recall    = tpr
//   precision = (tpr*m) / ((tpr*m) + (fpr*n))
// UndefinedMeasureError when tpr*m + fpr*n = 0 (no positive predictions).
PrPoint roc_to_pr(const RocPoint& pt, const SkewScenario& skew);

}  // namespace privometer

#endif  // PRIVOMETER_METRICS_HPP_
