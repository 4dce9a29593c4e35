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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "privometer/errors.hpp"
#include "privometer/learners.hpp"

namespace privometer {

std::string to_string(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::logistic_l1: return "logistic_l1";
    case LearnerKind::lasso: return "lasso";
    case LearnerKind::majority: return "majority";
    case LearnerKind::nearest_neighbor: return "nearest_neighbor";
    case LearnerKind::auto_best: return "auto_best";
  }
  throw ValidationError("unknown learner kind");
}

LearnerKind learner_kind_from_string(const std::string& name) {
  if (name == "logistic_l1") return LearnerKind::logistic_l1;
  if (name == "lasso") return LearnerKind::lasso;
  if (name == "majority") return LearnerKind::majority;
  if (name == "nearest_neighbor") return LearnerKind::nearest_neighbor;
  if (name == "auto_best") return LearnerKind::auto_best;
  throw ValidationError("unknown learner kind: '" + name + "'");
}

Eigen::MatrixXd CategoricalModel::probabilities(
    const Eigen::MatrixXd& x) const {
  const Eigen::Index k = weights.rows();
  if (intercepts.size() != k) {
    throw ValidationError("weights and intercepts disagree on class count");
  }
  if (weights.cols() == 0) {
    // Weight-free model: the intercepts are nonnegative class scores, and
    // every input gets the same linearly normalized row. Dividing counts by
    // their sum keeps frequencies exact where softmax(log .) would not.
    const double total = intercepts.sum();
    if (!(total > 0.0)) {
      throw ValidationError("weight-free model needs a positive score total");
    }
    Eigen::MatrixXd probs(x.rows(), k);
    probs.rowwise() = (intercepts / total).transpose();
    return probs;
  }
  if (x.cols() != weights.cols()) {
    throw ValidationError("input and model disagree on feature count");
  }
  Eigen::MatrixXd logits =
      (x * weights.transpose()).rowwise() + intercepts.transpose();
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double row_max = logits.row(i).maxCoeff();
    const Eigen::ArrayXd shifted =
        (logits.row(i).transpose().array() - row_max).exp();
    logits.row(i) = (shifted / shifted.sum()).matrix().transpose();
  }
  return logits;
}

Eigen::VectorXd ContinuousModel::predict(const Eigen::MatrixXd& x) const {
  if (x.cols() != weights.size()) {
    throw ValidationError("input and model disagree on feature count");
  }
  return (x * weights).array() + intercept;
}

bool FittedModel::converged() const {
  if (categorical.has_value()) return categorical->converged;
  if (continuous.has_value()) return continuous->converged;
  return true;  // nearest neighbor has no iterative fit
}

CategoricalModel fit_majority(const std::vector<std::int32_t>& y,
                              const std::vector<std::string>& class_labels) {
  const auto k = static_cast<Eigen::Index>(class_labels.size());
  if (k < 1) throw ValidationError("need at least one class label");
  if (y.empty()) throw ValidationError("cannot fit on an empty label list");

  Eigen::VectorXd counts = Eigen::VectorXd::Zero(k);
  for (const std::int32_t cls : y) {
    if (cls < 0 || cls >= k) throw ValidationError("class index out of range");
    counts[cls] += 1.0;
  }

  CategoricalModel model;
  model.class_labels = class_labels;
  model.weights = Eigen::MatrixXd::Zero(k, 0);
  // Raw counts as scores: probabilities() normalizes them linearly, so the
  // reported confidence is the exact training frequency (never-seen classes
  // get exactly zero).
  model.intercepts = counts;
  model.converged = true;
  model.iterations = 0;
  model.objective = 0.0;
  return model;
}

NearestNeighborModel fit_nearest_neighbor(const FeatureMatrix& x,
                                          const EncodedData& y) {
  const auto n = static_cast<std::size_t>(x.design.rows());
  if (n < 1) throw ValidationError("cannot fit on an empty matrix");
  if (x.row_ids.size() != n) {
    throw ValidationError("design matrix and row ids disagree on row count");
  }
  NearestNeighborModel model;
  model.reference = x.design;
  model.row_ids = x.row_ids;
  model.target_kind = y.target_kind;
  if (y.target_kind == ColumnKind::categorical) {
    if (y.y_label.size() != n) {
      throw ValidationError("design matrix and outcomes disagree on row "
                            "count");
    }
    model.labels = y.y_label;
  } else {
    if (static_cast<std::size_t>(y.y_value.size()) != n) {
      throw ValidationError("design matrix and outcomes disagree on row "
                            "count");
    }
    model.values = y.y_value;
  }
  return model;
}

FittedModel fit_model(LearnerKind kind, const FeatureMatrix& x,
                      const EncodedData& y, const LearnerSettings& settings) {
  const Eigen::Index n = x.design.rows();
  if (n < 1) throw ValidationError("cannot fit on an empty matrix");

  FittedModel model;
  model.kind = kind;
  model.target_kind = y.target_kind;

  switch (kind) {
    case LearnerKind::logistic_l1: {
      if (y.target_kind != ColumnKind::categorical) {
        throw ValidationError("logistic_l1 requires a categorical outcome");
      }
      if (!(settings.logistic_c > 0.0)) {
        throw ValidationError("logistic_c must be positive");
      }
      const double strength =
          1.0 / (settings.logistic_c * static_cast<double>(n));
      model.categorical = fit_logistic_l1(x.design, y.y_class, y.class_labels,
                                          strength, settings.optimizer);
      return model;
    }
    case LearnerKind::lasso: {
      if (y.target_kind != ColumnKind::continuous) {
        throw ValidationError("lasso requires a continuous outcome");
      }
      model.continuous =
          fit_lasso(x.design, y.y_value, settings.lasso_alpha,
                    settings.optimizer);
      return model;
    }
    case LearnerKind::majority: {
      if (y.target_kind != ColumnKind::categorical) {
        throw ValidationError("majority requires a categorical outcome");
      }
      model.categorical = fit_majority(y.y_class, y.class_labels);
      return model;
    }
    case LearnerKind::nearest_neighbor: {
      model.nearest = fit_nearest_neighbor(x, y);
      return model;
    }
    case LearnerKind::auto_best:
      throw ValidationError(
          "auto_best is not a concrete model; resolve it with best_of first");
  }
  throw ValidationError("unknown learner kind");
}

std::vector<Prediction> predict_with_threshold(const FittedModel& model,
                                               const Eigen::MatrixXd& x,
                                               double p_threshold) {
  if (!(p_threshold >= 0.0 && p_threshold <= 1.0)) {
    throw ValidationError("p_threshold must lie in [0, 1]");
  }
  const Eigen::Index n = x.rows();
  std::vector<Prediction> out(static_cast<std::size_t>(n));

  if (model.categorical.has_value()) {
    const CategoricalModel& cat = *model.categorical;
    const Eigen::MatrixXd probs = cat.probabilities(x);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index best = 0;
      probs.row(i).maxCoeff(&best);  // ties keep the first (smallest label)
      Prediction& p = out[static_cast<std::size_t>(i)];
      p.label = cat.class_labels[static_cast<std::size_t>(best)];
      p.confidence = probs(i, best);
      p.abstained = p.confidence < p_threshold;
    }
    return out;
  }

  if (model.continuous.has_value()) {
    const Eigen::VectorXd values = model.continuous->predict(x);
    for (Eigen::Index i = 0; i < n; ++i) {
      Prediction& p = out[static_cast<std::size_t>(i)];
      p.value = values[i];
      p.confidence = 1.0;
      p.abstained = p.confidence < p_threshold;
    }
    return out;
  }

  if (model.nearest.has_value()) {
    const NearestNeighborModel& nn = *model.nearest;
    if (x.cols() != nn.reference.cols()) {
      throw ValidationError("input and model disagree on feature count");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index best = -1;
      double best_dist = std::numeric_limits<double>::infinity();
      std::uint32_t best_id = std::numeric_limits<std::uint32_t>::max();
      for (Eigen::Index r = 0; r < nn.reference.rows(); ++r) {
        const double dist = (nn.reference.row(r) - x.row(i)).squaredNorm();
        const std::uint32_t rid = nn.row_ids[static_cast<std::size_t>(r)];
        if (dist < best_dist || (dist == best_dist && rid < best_id)) {
          best = r;
          best_dist = dist;
          best_id = rid;
        }
      }
      Prediction& p = out[static_cast<std::size_t>(i)];
      if (nn.target_kind == ColumnKind::categorical) {
        p.label = nn.labels[static_cast<std::size_t>(best)];
      } else {
        p.value = nn.values[best];
      }
      p.confidence = 1.0;
      p.abstained = p.confidence < p_threshold;
    }
    return out;
  }

  throw ValidationError("model holds no fitted payload");
}

std::size_t best_of(const std::vector<LearnerKind>& candidates,
                    const Eigen::MatrixXd& x_train,
                    const std::vector<std::int32_t>& y_train,
                    const std::vector<std::string>& class_labels,
                    const Eigen::MatrixXd& x_val,
                    const std::vector<std::int32_t>& y_val,
                    const LearnerSettings& settings) {
  if (candidates.empty()) throw ValidationError("no candidates to choose from");
  if (y_val.empty()) throw ValidationError("validation split is empty");
  if (y_train.empty()) throw ValidationError("training split is empty");

  const std::set<std::int32_t> distinct_train(y_train.begin(), y_train.end());

  double best_score = -1.0;
  std::size_t best_index = candidates.size();
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const LearnerKind kind = candidates[c];
    CategoricalModel fitted;
    switch (kind) {
      case LearnerKind::logistic_l1: {
        if (distinct_train.size() < 2) continue;  // nothing to discriminate
        if (!(settings.logistic_c > 0.0)) {
          throw ValidationError("logistic_c must be positive");
        }
        const double strength =
            1.0 /
            (settings.logistic_c * static_cast<double>(y_train.size()));
        fitted = fit_logistic_l1(x_train, y_train, class_labels, strength,
                                 settings.optimizer);
        break;
      }
      case LearnerKind::majority:
        fitted = fit_majority(y_train, class_labels);
        break;
      default:
        throw ValidationError(
            "best_of candidates must be categorical model kinds");
    }

    FittedModel model;
    model.kind = kind;
    model.target_kind = ColumnKind::categorical;
    model.categorical = std::move(fitted);
    const std::vector<Prediction> preds =
        predict_with_threshold(model, x_val, 0.0);

    std::size_t correct = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      const int truth = y_val[i];
      if (truth < 0 ||
          truth >= static_cast<int>(class_labels.size())) {
        throw ValidationError("class index out of range");
      }
      if (preds[i].label == class_labels[static_cast<std::size_t>(truth)]) {
        ++correct;
      }
    }
    const double score =
        static_cast<double>(correct) / static_cast<double>(preds.size());
    if (score > best_score) {
      best_score = score;
      best_index = c;
    }
  }

  if (best_index == candidates.size()) {
    throw ValidationError("no candidate could be fit on this split");
  }
  return best_index;
}

}  // namespace privometer
