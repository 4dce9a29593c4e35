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

#include "privometer/roc.hpp"

#include <algorithm>
#include <filesystem>
#include <utility>

#include "privometer/csv.hpp"
#include "privometer/errors.hpp"

namespace privometer {
namespace {

void validate_curve(const RocCurve& curve) {
  if (curve.points.empty()) {
    throw ValidationError("ROC curve '" + curve.name + "' has no points");
  }
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const RocPoint& pt = curve.points[i];
    if (!(pt.fpr >= 0.0 && pt.fpr <= 1.0) ||
        !(pt.tpr >= 0.0 && pt.tpr <= 1.0)) {
      throw ValidationError("ROC curve '" + curve.name +
                            "': rates must lie in [0, 1]");
    }
    if (i > 0) {
      if (!(curve.points[i - 1].fpr < pt.fpr)) {
        throw ValidationError("ROC curve '" + curve.name +
                              "': fpr must be strictly increasing");
      }
      if (curve.points[i - 1].tpr > pt.tpr) {
        throw ValidationError("ROC curve '" + curve.name +
                              "': tpr must be non-decreasing");
      }
    }
  }
}

}  // namespace

RocCurve parse_roc_csv(const std::string& csv_text, const std::string& name) {
  const CsvTable table = parse_csv(csv_text);
  if (table.header.size() != 2 || table.header[0] != "fpr" ||
      table.header[1] != "tpr") {
    throw ValidationError("ROC file must have the header 'fpr,tpr'");
  }
  RocCurve curve;
  curve.name = name;
  curve.points.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    RocPoint pt;
    pt.fpr = parse_double(row[0]);
    pt.tpr = parse_double(row[1]);
    curve.points.push_back(pt);
  }
  std::sort(curve.points.begin(), curve.points.end(),
            [](const RocPoint& a, const RocPoint& b) { return a.fpr < b.fpr; });
  validate_curve(curve);
  return curve;
}

RocCurve load_roc(const std::string& path) {
  const std::string name = std::filesystem::path(path).stem().string();
  return parse_roc_csv(read_text_file(path), name);
}

std::vector<PrTable> pr_tables(const std::vector<RocCurve>& curves,
                               const std::vector<SkewScenario>& skews) {
  if (curves.empty()) throw ValidationError("no ROC curves given");
  if (skews.empty()) throw ValidationError("no skew scenarios given");

  std::vector<PrTable> tables;
  tables.reserve(curves.size());
  for (const RocCurve& curve : curves) {
    validate_curve(curve);
    PrTable table;
    table.curve_name = curve.name;
    table.rows.reserve(curve.points.size() * skews.size());
    for (const SkewScenario& skew : skews) {
      for (const RocPoint& pt : curve.points) {
        PrRow row;
        row.skew = skew;
        row.fpr = pt.fpr;
        row.tpr = pt.tpr;
        row.recall = pt.tpr;
        try {
          row.precision = roc_to_pr(pt, skew).precision;
        } catch (const UndefinedMeasureError&) {
          row.precision = std::nullopt;  // tpr = fpr = 0: kept, marked
        }
        table.rows.push_back(row);
      }
    }
    tables.push_back(std::move(table));
  }
  return tables;
}

std::pair<RocCurve, RocCurve> bundled_fixture() {
  RocCurve shokri;
  shokri.name = "shokri";
  shokri.points = {
      {0.00001, 0.0003}, {0.0001, 0.002}, {0.001, 0.015}, {0.01, 0.1},
      {0.1, 0.4},        {0.5, 1.0},      {1.0, 1.0},
  };
  RocCurve carlini;
  carlini.name = "carlini";
  carlini.points = {
      {0.00001, 0.1}, {0.0001, 0.2}, {0.001, 0.35}, {0.01, 0.5},
      {0.1, 0.75},    {0.25, 1.0},   {1.0, 1.0},
  };
  validate_curve(shokri);
  validate_curve(carlini);
  return {std::move(shokri), std::move(carlini)};
}

SkewScenario parse_skew(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size()) {
    throw ValidationError("skew must be written m:n, e.g. '1:30'; got '" +
                          text + "'");
  }
  SkewScenario skew;
  skew.m = parse_double(text.substr(0, colon));
  skew.n = parse_double(text.substr(colon + 1));
  if (!(skew.m > 0.0)) {
    throw ValidationError("skew member weight must be positive: '" + text +
                          "'");
  }
  if (!(skew.n >= 0.0)) {
    throw ValidationError("skew non-member weight must be non-negative: '" +
                          text + "'");
  }
  return skew;
}

std::string format_skew(const SkewScenario& skew) {
  return format_double(skew.m) + ":" + format_double(skew.n);
}

std::vector<SkewScenario> default_skews() {
  return {{1.0, 1.0},  {1.0, 2.0},  {1.0, 5.0},  {1.0, 10.0},
          {1.0, 30.0}, {1.0, 50.0}, {1.0, 240.0}};
}

}  // namespace privometer
