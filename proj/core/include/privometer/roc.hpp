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

#ifndef PRIVOMETER_ROC_HPP_
#define PRIVOMETER_ROC_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "privometer/metrics.hpp"

namespace privometer {

// A membership-attack ROC curve: operating points sorted by false-positive
// rate. Loading enforces strictly increasing fpr and non-decreasing tpr —
// a violation means the input is not a ROC curve and is rejected.
struct RocCurve {
  std::string name;
  std::vector<RocPoint> points;
};

// One ROC point re-expressed under one skew. `precision` is empty for the
// one genuinely undefined case (tpr = fpr = 0: no positive predictions);
// such rows are kept, explicitly marked, rather than dropped or zeroed.
struct PrRow {
  SkewScenario skew;
  double fpr = 0.0;
  double tpr = 0.0;
  std::optional<double> precision;
  double recall = 0.0;
};

// All (skew, point) combinations for one curve, skew-major so each skew's
// block reads as one precision-recall trace.
struct PrTable {
  std::string curve_name;
  std::vector<PrRow> rows;
};

// Reads a curve from a CSV file with header `fpr,tpr`, sorts by fpr and
// validates the invariants above. The curve is named after the file stem.
RocCurve load_roc(const std::string& path);

// Same parse/validate path from in-memory CSV text, with an explicit name.
RocCurve parse_roc_csv(const std::string& csv_text, const std::string& name);

// Re-expresses every curve under every skew. No interpolation happens —
// precision at an unmeasured fpr would be an invented number. Rows keep the
// skew order given, points ascending by fpr within each skew.
std::vector<PrTable> pr_tables(const std::vector<RocCurve>& curves,
                               const std::vector<SkewScenario>& skews);

// Two published membership-attack curves bundled as a demonstration input:
// a shadow-model attack ("shokri") and a likelihood-ratio attack
// ("carlini"), seven operating points each, both ending at (1, 1).
std::pair<RocCurve, RocCurve> bundled_fixture();

// Parses "m:n" (e.g. "1:30") into a scenario with m members per n
// non-members. m must be positive, n non-negative.
SkewScenario parse_skew(const std::string& text);
std::string format_skew(const SkewScenario& skew);

// The skews reports use when none are requested: balanced, a spread of
// moderate rates, and two strongly skewed real-world scenarios.
std::vector<SkewScenario> default_skews();

}  // namespace privometer

#endif  // PRIVOMETER_ROC_HPP_
