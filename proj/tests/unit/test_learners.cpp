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

#include <string>
#include <vector>

#include <doctest.h>
#include <Eigen/Dense>

#include "privometer/dataset.hpp"
#include "privometer/encode.hpp"
#include "privometer/errors.hpp"
#include "privometer/learners.hpp"
#include "support/synthetic.hpp"

using namespace privometer;

TEST_CASE("the majority model reproduces class priors for any input") {
  // 3 a, 1 b: priors 0.75 / 0.25.
  const CategoricalModel model = fit_majority({0, 0, 0, 1}, {"a", "b"});
  CHECK(model.converged);
  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(5, 7);
  const Eigen::MatrixXd probs = model.probabilities(x);
  REQUIRE(probs.rows() == 5);
  REQUIRE(probs.cols() == 2);
  for (int i = 0; i < 5; ++i) {
    CHECK(probs(i, 0) == doctest::Approx(0.75));
    CHECK(probs(i, 1) == doctest::Approx(0.25));
  }
}

TEST_CASE("majority ties go to the lexicographically smallest label") {
  const CategoricalModel model =
      fit_majority({1, 0, 1, 0}, {"alpha", "beta"});
  FittedModel fitted;
  fitted.kind = LearnerKind::majority;
  fitted.target_kind = ColumnKind::categorical;
  fitted.categorical = model;
  const auto preds =
      predict_with_threshold(fitted, Eigen::MatrixXd::Zero(1, 3), 0.0);
  CHECK(preds[0].label == "alpha");
  CHECK(preds[0].confidence == doctest::Approx(0.5));
}

TEST_CASE("classes absent from the fit get zero probability") {
  const CategoricalModel model = fit_majority({0, 0}, {"seen", "unseen"});
  const Eigen::MatrixXd probs =
      model.probabilities(Eigen::MatrixXd::Zero(1, 1));
  CHECK(probs(0, 0) == doctest::Approx(1.0));
  CHECK(probs(0, 1) == 0.0);
}

TEST_CASE("nearest neighbor recalls stored rows and ties on lowest row id") {
  const Dataset d = testing::make_distinct_rows_dataset(30, 31);
  const EncodedData ed = encode(d, d, {"x1", "x2"}, "secret");
  FittedModel fitted;
  fitted.kind = LearnerKind::nearest_neighbor;
  fitted.target_kind = ColumnKind::categorical;
  fitted.nearest = fit_nearest_neighbor(ed.x, ed);

  // Each stored row is its own nearest neighbor at distance 0.
  const auto preds = predict_with_threshold(fitted, ed.x.design, 0.0);
  for (std::size_t i = 0; i < preds.size(); ++i) {
    CHECK_FALSE(preds[i].abstained);
    CHECK(preds[i].label == ed.y_label[i]);
    CHECK(preds[i].confidence == 1.0);
  }

  // Duplicate reference rows: the lower row id wins the tie.
  FeatureMatrix two;
  two.design = Eigen::MatrixXd::Zero(2, 2);
  two.row_ids = {5, 9};
  EncodedData ty;
  ty.x = two;
  ty.target_kind = ColumnKind::categorical;
  ty.class_labels = {"first", "second"};
  ty.y_class = {0, 1};
  ty.y_label = {"first", "second"};
  FittedModel tie;
  tie.kind = LearnerKind::nearest_neighbor;
  tie.target_kind = ColumnKind::categorical;
  tie.nearest = fit_nearest_neighbor(two, ty);
  const auto tied =
      predict_with_threshold(tie, Eigen::MatrixXd::Zero(1, 2), 0.0);
  CHECK(tied[0].label == "first");
}

TEST_CASE("thresholding abstains strictly below the cutoff") {
  const CategoricalModel model = fit_majority({0, 0, 0, 1}, {"a", "b"});
  FittedModel fitted;
  fitted.kind = LearnerKind::majority;
  fitted.target_kind = ColumnKind::categorical;
  fitted.categorical = model;
  const Eigen::MatrixXd x = Eigen::MatrixXd::Zero(1, 2);

  auto at = [&](double t) { return predict_with_threshold(fitted, x, t); };
  CHECK_FALSE(at(0.0)[0].abstained);
  CHECK_FALSE(at(0.75)[0].abstained);  // strict: equal confidence predicts
  CHECK(at(0.76)[0].abstained);
  CHECK(at(1.0)[0].abstained);
  // Confidence is reported even for abstentions.
  CHECK(at(0.9)[0].confidence == doctest::Approx(0.75));
  CHECK_THROWS_AS(at(1.5), ValidationError);
  CHECK_THROWS_AS(at(-0.1), ValidationError);
}

TEST_CASE("continuous predictions never abstain") {
  Eigen::MatrixXd x(4, 1);
  x << 0, 1, 2, 3;
  Eigen::VectorXd y(4);
  y << 1, 3, 5, 7;
  const ContinuousModel lasso = fit_lasso(x, y, 1e-6);
  FittedModel fitted;
  fitted.kind = LearnerKind::lasso;
  fitted.target_kind = ColumnKind::continuous;
  fitted.continuous = lasso;
  for (const double t : {0.0, 0.5, 1.0}) {
    const auto preds = predict_with_threshold(fitted, x, t);
    for (const Prediction& p : preds) {
      CHECK_FALSE(p.abstained);
      CHECK(p.confidence == 1.0);
    }
  }
  CHECK(predict_with_threshold(fitted, x, 0.0)[2].value ==
        doctest::Approx(5.0).epsilon(1e-3));
}

TEST_CASE("fit_model maps the config C onto the per-fit strength") {
  const Dataset d = testing::make_parity_dataset(300, 32);
  const EncodedData ed = encode(d, d, {"group", "noise"}, "secret");

  LearnerSettings weak;   // C = 10 leaves the signal alone
  weak.logistic_c = 10.0;
  const FittedModel strong_fit =
      fit_model(LearnerKind::logistic_l1, ed.x, ed, weak);
  const auto preds = predict_with_threshold(strong_fit, ed.x.design, 0.0);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i].label == ed.y_label[i]) ++correct;
  }
  CHECK(static_cast<double>(correct) / static_cast<double>(preds.size()) >=
        0.95);

  // Kind / target mismatches are refused.
  CHECK_THROWS_AS(fit_model(LearnerKind::lasso, ed.x, ed, weak),
                  ValidationError);
  CHECK_THROWS_AS(fit_model(LearnerKind::auto_best, ed.x, ed, weak),
                  ValidationError);
}

TEST_CASE("model selection scores candidates on the validation split") {
  // Parity: logistic wins over majority on a held-out fifth.
  const Dataset d = testing::make_parity_dataset(500, 33);
  const Dataset train = d.select_rows([&] {
    std::vector<std::uint32_t> pos;
    for (std::uint32_t i = 0; i < 400; ++i) pos.push_back(i);
    return pos;
  }());
  const Dataset val = d.select_rows([&] {
    std::vector<std::uint32_t> pos;
    for (std::uint32_t i = 400; i < 500; ++i) pos.push_back(i);
    return pos;
  }());
  const EncodedData tr = encode(train, train, {"group", "noise"}, "secret");
  const EncodedData va = encode(train, val, {"group", "noise"}, "secret");

  LearnerSettings settings;
  settings.logistic_c = 10.0;
  const std::vector<LearnerKind> candidates = {LearnerKind::majority,
                                               LearnerKind::logistic_l1};
  const std::size_t winner =
      best_of(candidates, tr.x.design, tr.y_class, tr.class_labels,
              va.x.design, va.y_class, settings);
  CHECK(winner == 1);

  // With a constant training secret, logistic is skipped and majority wins.
  std::vector<std::int32_t> constant_train(tr.y_class.size(), 0);
  std::vector<std::int32_t> constant_val(va.y_class.size(), 0);
  const std::size_t fallback =
      best_of(candidates, tr.x.design, constant_train, tr.class_labels,
              va.x.design, constant_val, settings);
  CHECK(fallback == 0);

  CHECK_THROWS_AS(best_of({}, tr.x.design, tr.y_class, tr.class_labels,
                          va.x.design, va.y_class, settings),
                  ValidationError);
  CHECK_THROWS_AS(best_of({LearnerKind::lasso}, tr.x.design, tr.y_class,
                          tr.class_labels, va.x.design, va.y_class,
                          settings),
                  ValidationError);
}
