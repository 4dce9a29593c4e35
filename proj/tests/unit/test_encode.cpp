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
#include <string>
#include <vector>

#include <doctest.h>

#include "privometer/dataset.hpp"
#include "privometer/encode.hpp"
#include "privometer/errors.hpp"

using namespace privometer;

namespace {

Dataset small() {
  std::vector<ColumnSpec> specs = {
      {"color", ColumnKind::categorical, false, false},
      {"height", ColumnKind::continuous, false, false},
      {"label", ColumnKind::categorical, false, false},
  };
  return Dataset::from_rows(specs, {{"red", "10", "yes"},
                                    {"blue", "20", "no"},
                                    {"red", "30", "yes"},
                                    {"green", "40", "no"}});
}

}  // namespace

TEST_CASE("one-hot blocks and standardized continuous features") {
  const Dataset d = small();
  const Encoder enc = Encoder::fit(d, {"color", "height"}, "label");
  const FeatureMatrix fm = enc.transform(d);

  // Sorted alphabet {blue, green, red} then the standardized height.
  REQUIRE(fm.design.cols() == 4);
  REQUIRE(fm.design.rows() == 4);
  CHECK(fm.feature_names[0] == "color=blue");
  CHECK(fm.feature_names[1] == "color=green");
  CHECK(fm.feature_names[2] == "color=red");
  CHECK(fm.feature_names[3] == "height");

  // Row 0 is red: exactly one 1 in the color block.
  CHECK(fm.design(0, 2) == 1.0);
  CHECK(fm.design(0, 0) == 0.0);
  CHECK(fm.design(0, 1) == 0.0);

  // Heights 10..40: mean 25, population sd sqrt(125).
  const double sd = std::sqrt(125.0);
  CHECK(fm.design(0, 3) == doctest::Approx((10.0 - 25.0) / sd));
  CHECK(fm.design(3, 3) == doctest::Approx((40.0 - 25.0) / sd));

  CHECK(fm.row_ids.size() == 4);
  CHECK(fm.row_ids[0] == 0);
}

TEST_CASE("encoding statistics come from the fitting set only") {
  const Dataset d = small();
  const Encoder enc = Encoder::fit(d, {"color", "height"}, "label");

  std::vector<ColumnSpec> specs = d.schema();
  const Dataset other = Dataset::from_rows(
      specs, {{"violet", "1000", "maybe"}});
  const FeatureMatrix fm = enc.transform(other);

  // Unseen color: the one-hot block is all zeros.
  CHECK(fm.design(0, 0) == 0.0);
  CHECK(fm.design(0, 1) == 0.0);
  CHECK(fm.design(0, 2) == 0.0);
  // The fit-time mean/sd standardize the new value; nothing is refit.
  CHECK(fm.design(0, 3) == doctest::Approx((1000.0 - 25.0) /
                                           std::sqrt(125.0)));

  // Unseen target labels index as -1.
  const auto idx = enc.target_class_indices(other);
  REQUIRE(idx.size() == 1);
  CHECK(idx[0] == -1);
}

TEST_CASE("constant continuous columns encode as zero") {
  std::vector<ColumnSpec> specs = {
      {"c", ColumnKind::continuous, false, false},
      {"y", ColumnKind::categorical, false, false},
  };
  const Dataset d =
      Dataset::from_rows(specs, {{"5", "a"}, {"5", "b"}, {"5", "a"}});
  const Encoder enc = Encoder::fit(d, {"c"}, "y");
  const FeatureMatrix fm = enc.transform(d);
  CHECK(fm.design(0, 0) == 0.0);
  CHECK(fm.design(2, 0) == 0.0);
}

TEST_CASE("target extraction by kind") {
  const Dataset d = small();
  const Encoder enc = Encoder::fit(d, {"color"}, "label");
  CHECK(enc.target_kind() == ColumnKind::categorical);
  CHECK(enc.class_labels() == std::vector<std::string>{"no", "yes"});
  const auto idx = enc.target_class_indices(d);
  CHECK(idx == std::vector<std::int32_t>{1, 0, 1, 0});
  CHECK(enc.target_labels(d)[2] == "yes");

  const Encoder cont = Encoder::fit(d, {"color"}, "height");
  CHECK(cont.target_kind() == ColumnKind::continuous);
  const Eigen::VectorXd y = cont.target_values(d);
  CHECK(y[3] == 40.0);
}

TEST_CASE("the facade refuses degenerate feature sets") {
  const Dataset d = small();
  CHECK_THROWS_AS(Encoder::fit(d, {}, "label"), ValidationError);
  CHECK_THROWS_AS(Encoder::fit(d, {"label"}, "label"), ValidationError);
  CHECK_THROWS_AS(Encoder::fit(d, {"ghost"}, "label"), ValidationError);

  const EncodedData ed = encode(d, d, {"color", "height"}, "label");
  CHECK(ed.target_kind == ColumnKind::categorical);
  CHECK(ed.x.design.rows() == 4);
  CHECK(ed.y_class.size() == 4);
  CHECK(ed.y_label[0] == "yes");
}
