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

#include "privometer/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "privometer/errors.hpp"

namespace privometer {
namespace {

void check_counts(const Counts& c) {
  if (c.tp < 0 || c.fp < 0 || c.fn < 0 || c.tn < 0 || c.np < 0) {
    throw ValidationError("counts must be non-negative");
  }
}

}  // namespace

double accuracy(const Counts& c) {
  check_counts(c);
  const std::int64_t denom = c.tp + c.fp + c.fn + c.tn;
  if (denom == 0) {
    throw UndefinedMeasureError("accuracy undefined: no classified outcomes");
  }
  return static_cast<double>(c.tp + c.tn) / static_cast<double>(denom);
}

double precision(const Counts& c) {
  check_counts(c);
  const std::int64_t denom = c.tp + c.fp;
  if (denom == 0) {
    throw UndefinedMeasureError(
        "precision undefined: no positive predictions");
  }
  return static_cast<double>(c.tp) / static_cast<double>(denom);
}

double recall(const Counts& c) {
  check_counts(c);
  const std::int64_t denom = c.tp + c.fn;
  if (denom == 0) {
    throw UndefinedMeasureError("recall undefined: no actual positives");
  }
  return static_cast<double>(c.tp) / static_cast<double>(denom);
}

double prediction_rate(const Counts& c) {
  check_counts(c);
  const std::int64_t denom = c.tp + c.fp + c.np;
  if (denom == 0) {
    throw UndefinedMeasureError(
        "prediction rate undefined: no predictions or abstentions");
  }
  return static_cast<double>(c.tp) / static_cast<double>(denom);
}

double binary_recall_per_value(
    const std::vector<std::optional<std::string>>& predictions,
    const std::vector<std::string>& truths, const std::string& value) {
  if (predictions.size() != truths.size()) {
    throw ValidationError("predictions and truths must have equal length");
  }
  if (truths.empty()) {
    throw ValidationError("cannot score an empty prediction list");
  }
  std::int64_t tp = 0;
  std::int64_t fn = 0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    if (truths[i] != value) continue;
    const bool predicted_value =
        predictions[i].has_value() && *predictions[i] == value;
    if (predicted_value) {
      ++tp;
    } else {
      ++fn;  // Other labels and abstentions both count as "not this value".
    }
  }
  if (tp + fn == 0) {
    throw ValidationError("value '" + value +
                          "' does not occur among the true outcomes");
  }
  return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

bool correct_continuous(double pred, double truth, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw ValidationError("epsilon must be positive");
  }
  if (truth == 0.0) return pred == 0.0;
  return std::abs(pred - truth) <= epsilon * std::abs(truth);
}

double precision_improvement(double p_atk, double p_base) {
  if (!(p_atk >= 0.0 && p_atk <= 1.0)) {
    throw ValidationError("p_atk must lie in [0, 1]");
  }
  if (!(p_base >= 0.0 && p_base <= 1.0)) {
    throw ValidationError("p_base must lie in [0, 1]");
  }
  if (p_base == 1.0) {
    throw SaturatedBaselineError(
        "baseline precision is already 1; improvement over it is undefined");
  }
  return (p_atk - p_base) / (1.0 - p_base);
}

PrPoint roc_to_pr(const RocPoint& pt, const SkewScenario& skew) {
  if (!(pt.fpr >= 0.0 && pt.fpr <= 1.0) || !(pt.tpr >= 0.0 && pt.tpr <= 1.0)) {
    throw ValidationError("ROC rates must lie in [0, 1]");
  }
  if (!(skew.m > 0.0)) {
    throw ValidationError("skew member weight must be positive");
  }
  if (!(skew.n >= 0.0)) {
    throw ValidationError("skew non-member weight must be non-negative");
  }
  const double pos = pt.tpr * skew.m;
  const double neg = pt.fpr * skew.n;
  if (pos + neg == 0.0) {
    throw UndefinedMeasureError(
        "precision undefined at this operating point: the attack makes no "
        "positive predictions under this skew");
  }
  PrPoint out;
  out.recall = pt.tpr;
  out.precision = pos / (pos + neg);
  return out;
}

}  // namespace privometer
