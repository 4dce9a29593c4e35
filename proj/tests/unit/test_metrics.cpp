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

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <doctest.h>

#include "privometer/errors.hpp"
#include "privometer/metrics.hpp"
#include "privometer/rng.hpp"

using namespace privometer;

TEST_CASE("counting measures on known tallies") {
  // Counts fields are {tp, fp, fn, tn, np}.
  CHECK(prediction_rate({5, 3, 0, 0, 2}) == doctest::Approx(0.5));
  CHECK(prediction_rate({4, 1, 0, 0, 0}) == doctest::Approx(0.8));
  CHECK(prediction_rate({0, 0, 0, 0, 10}) == doctest::Approx(0.0));
  CHECK(precision({5, 3, 0, 0, 2}) == doctest::Approx(5.0 / 8.0));
  CHECK(recall({3, 0, 1, 0, 0}) == doctest::Approx(0.75));
  CHECK(accuracy({3, 1, 1, 5, 0}) == doctest::Approx(0.8));
}

TEST_CASE("undefined denominators throw instead of defaulting") {
  CHECK_THROWS_AS(precision({0, 0, 0, 0, 10}), UndefinedMeasureError);
  CHECK_THROWS_AS(recall({0, 5, 0, 3, 0}), UndefinedMeasureError);
  CHECK_THROWS_AS(accuracy({0, 0, 0, 0, 4}), UndefinedMeasureError);
  CHECK_THROWS_AS(prediction_rate({0, 0, 0, 0, 0}), UndefinedMeasureError);
  CHECK_THROWS_AS(precision({-1, 2, 0, 0, 0}), ValidationError);
}

TEST_CASE("prediction rate never exceeds precision when both are defined") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Counts c;
    c.tp = static_cast<std::int64_t>(rng.below(20)) + 1;  // both defined
    c.fp = static_cast<std::int64_t>(rng.below(20));
    c.np = static_cast<std::int64_t>(rng.below(20));
    CHECK(prediction_rate(c) <= precision(c) + 1e-15);
  }
}

TEST_CASE("per-value recall counts abstentions as negatives") {
  const std::vector<std::optional<std::string>> preds = {
      std::string("college"), std::string("college"), std::string("phd")};
  const std::vector<std::string> truths = {"college", "masters", "college"};
  CHECK(binary_recall_per_value(preds, truths, "college") ==
        doctest::Approx(0.5));

  const std::vector<std::optional<std::string>> with_abstain = {
      std::nullopt, std::string("college")};
  const std::vector<std::string> both_college = {"college", "college"};
  CHECK(binary_recall_per_value(with_abstain, both_college, "college") ==
        doctest::Approx(0.5));

  CHECK_THROWS_AS(binary_recall_per_value(preds, truths, "absent-label"),
                  ValidationError);
  CHECK_THROWS_AS(binary_recall_per_value({}, {}, "college"),
                  ValidationError);
}

TEST_CASE("relative-tolerance correctness for continuous secrets") {
  CHECK(correct_continuous(104.0, 100.0, 0.05));
  CHECK_FALSE(correct_continuous(106.0, 100.0, 0.05));
  CHECK(correct_continuous(0.0, 0.0, 0.05));
  CHECK_FALSE(correct_continuous(1e-9, 0.0, 0.05));  // zero truth is exact
  CHECK(correct_continuous(-104.0, -100.0, 0.05));   // scale is |truth|
  CHECK_FALSE(correct_continuous(-106.0, -100.0, 0.05));
  CHECK_THROWS_AS(correct_continuous(1.0, 1.0, 0.0), ValidationError);
}

TEST_CASE("precision improvement hits its anchor values exactly") {
  // Both quotients are exact in binary64: the numerator is bit-exactly
  // half the denominator.
  CHECK(precision_improvement(0.75, 0.5) == 0.5);
  CHECK(precision_improvement(0.97, 0.94) == 0.5);
  CHECK(precision_improvement(0.3, 0.3) == 0.0);
  CHECK(precision_improvement(0.9, 0.9) == 0.0);
  CHECK(precision_improvement(1.0, 0.25) == 1.0);
  CHECK_THROWS_AS(precision_improvement(0.5, 1.0), SaturatedBaselineError);
  CHECK_THROWS_AS(precision_improvement(1.5, 0.5), ValidationError);
  CHECK_THROWS_AS(precision_improvement(0.5, -0.1), ValidationError);
}

TEST_CASE("precision improvement is strictly increasing in attack precision") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const double p_base = rng.unit_real() * 0.99;
    double a = rng.unit_real();
    double b = rng.unit_real();
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    CHECK(precision_improvement(a, p_base) < precision_improvement(b, p_base));
    // Bounds: -p_base/(1-p_base) at p_atk=0, exactly 1 at p_atk=1 and only
    // there.
    CHECK(precision_improvement(0.0, p_base) ==
          doctest::Approx(-p_base / (1.0 - p_base)));
    CHECK(precision_improvement(1.0, p_base) == 1.0);
    if (b < 1.0) CHECK(precision_improvement(b, p_base) < 1.0);
  }
}

TEST_CASE("ROC points re-report as precision at a chosen base-rate skew") {
  const PrPoint balanced = roc_to_pr({0.05, 1.0}, {1000.0, 1000.0});
  CHECK(balanced.precision == doctest::Approx(0.952).epsilon(1e-3));
  CHECK(balanced.recall == 1.0);

  const PrPoint skewed = roc_to_pr({0.05, 1.0}, {20.0, 1980.0});
  CHECK(skewed.precision == doctest::Approx(0.168).epsilon(2e-3));

  const PrPoint rare = roc_to_pr({0.001, 0.35}, {1.0, 240.0});
  CHECK(rare.precision == doctest::Approx(0.35 / 0.59));
  CHECK(rare.recall == doctest::Approx(0.35));
}

TEST_CASE("recall equals tpr and a balanced skew reduces to tpr/(tpr+fpr)") {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const double fpr = rng.unit_real();
    const double tpr = rng.unit_real();
    if (tpr == 0.0 && fpr == 0.0) continue;
    const PrPoint pt = roc_to_pr({fpr, tpr}, {1.0, 1.0});
    CHECK(pt.recall == tpr);
    CHECK(pt.precision == doctest::Approx(tpr / (tpr + fpr)));
    CHECK(pt.precision >= 0.0);
    CHECK(pt.precision <= 1.0);
  }
}

TEST_CASE("precision strictly falls as the non-member share grows") {
  Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const double fpr = rng.unit_real() * 0.9 + 0.05;  // keep fpr > 0
    const double tpr = rng.unit_real() * 0.9 + 0.05;  // keep tpr > 0
    const double n1 = rng.unit_real() * 100.0 + 1.0;
    const double n2 = n1 + rng.unit_real() * 100.0 + 1.0;
    const PrPoint lighter = roc_to_pr({fpr, tpr}, {1.0, n1});
    const PrPoint heavier = roc_to_pr({fpr, tpr}, {1.0, n2});
    CHECK(heavier.precision < lighter.precision);
  }
}

TEST_CASE("roc_to_pr rejects malformed inputs and undefined corners") {
  CHECK_THROWS_AS(roc_to_pr({-0.1, 0.5}, {1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(roc_to_pr({0.1, 1.5}, {1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(roc_to_pr({0.1, 0.5}, {0.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(roc_to_pr({0.1, 0.5}, {1.0, -1.0}), ValidationError);
  CHECK_THROWS_AS(roc_to_pr({0.0, 0.0}, {1.0, 1.0}), UndefinedMeasureError);
  // No non-members at all: every prediction is a member, precision 1.
  const PrPoint only_members = roc_to_pr({0.5, 0.25}, {10.0, 0.0});
  CHECK(only_members.precision == 1.0);
}

namespace {

// Re-derives every measure from a raw outcome list, the slow way.
struct Recount {
  std::int64_t tp = 0, fp = 0, fn = 0, tn = 0, np = 0;
};

}  // namespace

TEST_CASE("counting measures agree with a brute-force recount (n <= 12)") {
  Rng rng(15);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = rng.below(12) + 1;
    Recount rc;
    for (std::size_t i = 0; i < n; ++i) {
      switch (rng.below(5)) {
        case 0: ++rc.tp; break;
        case 1: ++rc.fp; break;
        case 2: ++rc.fn; break;
        case 3: ++rc.tn; break;
        default: ++rc.np; break;
      }
    }
    const Counts c{rc.tp, rc.fp, rc.fn, rc.tn, rc.np};
    if (rc.tp + rc.fp > 0) {
      CHECK(precision(c) ==
            doctest::Approx(static_cast<double>(rc.tp) /
                            static_cast<double>(rc.tp + rc.fp)));
    }
    if (rc.tp + rc.fn > 0) {
      CHECK(recall(c) ==
            doctest::Approx(static_cast<double>(rc.tp) /
                            static_cast<double>(rc.tp + rc.fn)));
    }
    if (rc.tp + rc.fp + rc.np > 0) {
      CHECK(prediction_rate(c) ==
            doctest::Approx(static_cast<double>(rc.tp) /
                            static_cast<double>(rc.tp + rc.fp + rc.np)));
    }
    if (rc.tp + rc.fp + rc.fn + rc.tn > 0) {
      CHECK(accuracy(c) ==
            doctest::Approx(static_cast<double>(rc.tp + rc.tn) /
                            static_cast<double>(rc.tp + rc.fp + rc.fn +
                                                rc.tn)));
    }
  }
}
