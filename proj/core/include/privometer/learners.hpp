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

#ifndef PRIVOMETER_LEARNERS_HPP_
#define PRIVOMETER_LEARNERS_HPP_

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "privometer/dataset.hpp"
#include "privometer/encode.hpp"

namespace privometer {

// The model families the engine can fit. `auto_best` is resolved to a
// concrete kind by validation-split selection before any fitting happens.
enum class LearnerKind {
  logistic_l1,
  lasso,
  majority,
  nearest_neighbor,
  auto_best,
};

std::string to_string(LearnerKind kind);
LearnerKind learner_kind_from_string(const std::string& name);

struct OptimizerOptions {
  // Proximal-gradient stop rule: converged once the objective decrease over
  // one accepted step falls below this (only tested on non-increasing steps).
  double tol = 1e-6;
  int max_iterations = 10000;
  // Coordinate-descent stop rule: converged once no coefficient (intercept
  // included) moves by more than this in a full sweep.
  double cd_tol = 1e-8;
  int max_sweeps = 10000;
};

// soft_threshold(v, t) = sign(v) * max(|v| - t, 0), the proximal operator of
// t * |.|. Shared by both l1 solvers and by their test oracles.
inline double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

// Linear multi-class scorer: class logits are `weights * x + intercepts`,
// probabilities their softmax. A weight-free model (weights has 0 columns)
// ignores the input entirely: its intercepts hold nonnegative per-class
// scores that are normalized directly (no softmax), so stored class counts
// become exact training frequencies — that is how the majority model
// accepts arbitrary feature matrices and reports confidences like 3/4
// without rounding.
struct CategoricalModel {
  std::vector<std::string> class_labels;  // sorted ascending
  Eigen::MatrixXd weights;                // k x d (possibly d = 0)
  Eigen::VectorXd intercepts;             // k
  bool converged = true;
  int iterations = 0;
  double objective = 0.0;

  // Row-wise softmax probabilities, n x k. Numerically stable (max-shifted).
  Eigen::MatrixXd probabilities(const Eigen::MatrixXd& x) const;
};

// Linear regressor fitted with an l1 penalty.
struct ContinuousModel {
  Eigen::VectorXd weights;  // d
  double intercept = 0.0;
  bool converged = true;
  int sweeps = 0;

  Eigen::VectorXd predict(const Eigen::MatrixXd& x) const;
};

// Memorizing model: answers every query with the stored outcome of the
// closest fitting row (squared Euclidean distance; ties go to the lowest
// row id, so results never depend on storage order).
struct NearestNeighborModel {
  Eigen::MatrixXd reference;           // n x d
  std::vector<std::uint32_t> row_ids;  // n
  ColumnKind target_kind = ColumnKind::categorical;
  std::vector<std::string> labels;     // per reference row (categorical)
  Eigen::VectorXd values;              // per reference row (continuous)
};

// One fitted model of any kind. Exactly one of the three payloads is set.
struct FittedModel {
  LearnerKind kind = LearnerKind::majority;
  ColumnKind target_kind = ColumnKind::categorical;
  std::optional<CategoricalModel> categorical;
  std::optional<ContinuousModel> continuous;
  std::optional<NearestNeighborModel> nearest;

  bool converged() const;
};

// One answer for one target. `confidence` is the model's top-class
// probability for linear categorical models and 1.0 for nearest-neighbor
// and continuous predictions. It is filled in even when the model abstains,
// so callers can re-threshold without re-predicting.
struct Prediction {
  bool abstained = false;
  std::string label;        // categorical outcome
  double value = 0.0;       // continuous outcome
  double confidence = 0.0;  // in [0, 1]
};

// --- Fitting -----------------------------------------------------------

// Multinomial logistic regression with an l1 penalty on the weights
// (intercepts unpenalized), minimizing
//
//   (1/n) * sum_i cross_entropy_i  +  strength * ||weights||_1
//
// by accelerated proximal gradient descent with backtracking line search and
// function-value adaptive restart. `y` holds class indices into
// `class_labels`; classes absent from `y` are kept but can never win.
// A fit that exhausts max_iterations is returned with converged = false —
// still usable, but flagged so reports can say so.
CategoricalModel fit_logistic_l1(const Eigen::MatrixXd& x,
                                 const std::vector<std::int32_t>& y,
                                 const std::vector<std::string>& class_labels,
                                 double strength,
                                 const OptimizerOptions& options = {});

// Value and smooth-part gradients of the objective above, exposed so tests
// can check the analytic gradient against finite differences. The returned
// objective includes the l1 term; the gradients cover only the smooth
// cross-entropy part (the l1 subgradient is strength * sign(w) wherever
// w != 0).
double logistic_objective(const Eigen::MatrixXd& x, const std::vector<std::int32_t>& y,
                          const Eigen::MatrixXd& weights,
                          const Eigen::VectorXd& intercepts, double strength);
void logistic_gradient(const Eigen::MatrixXd& x, const std::vector<std::int32_t>& y,
                       const Eigen::MatrixXd& weights,
                       const Eigen::VectorXd& intercepts,
                       Eigen::MatrixXd* grad_weights,
                       Eigen::VectorXd* grad_intercept);

// Linear regression with an l1 penalty (intercept unpenalized), minimizing
//
//   (1/2n) * ||y - x*w - b||^2  +  alpha * ||w||_1
//
// by cyclic coordinate descent with soft-thresholding.
ContinuousModel fit_lasso(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                          double alpha, const OptimizerOptions& options = {});

// Largest violation of the stationarity conditions of the objective above at
// (w, b). Zero at an exact optimum; tests pin an explicit ceiling on it.
double lasso_kkt_residual(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                          const Eigen::VectorXd& weights, double intercept,
                          double alpha);

// Always-guess-the-mode model: a weight-free CategoricalModel whose
// intercepts are log class frequencies, so its softmax reproduces the
// training class priors exactly and its confidence is the modal frequency.
// Frequency ties resolve to the lexicographically smallest label.
CategoricalModel fit_majority(const std::vector<std::int32_t>& y,
                              const std::vector<std::string>& class_labels);

// Stores the fitting rows verbatim; see NearestNeighborModel.
NearestNeighborModel fit_nearest_neighbor(const FeatureMatrix& x,
                                          const EncodedData& y);

// Settings shared by every fit the engine performs. `logistic_c` follows the
// widespread inverse-regularization convention: the per-fit l1 strength on
// the mean cross-entropy is 1 / (logistic_c * n_rows), so the same config
// value means the same thing regardless of fitting-set size.
struct LearnerSettings {
  double logistic_c = 0.01;
  double lasso_alpha = 0.1;
  OptimizerOptions optimizer;
};

// Fits one concrete model of `kind` on (x, y). `kind` must not be
// auto_best — resolve it with best_of first. Categorical kinds require a
// categorical target, lasso a continuous one; nearest_neighbor accepts both.
FittedModel fit_model(LearnerKind kind, const FeatureMatrix& x,
                      const EncodedData& y, const LearnerSettings& settings);

// --- Prediction --------------------------------------------------------

// Predicts every row of x, abstaining where confidence < p_threshold
// (strict, so a threshold of 1.0 keeps fully confident predictions).
// p_threshold must lie in [0, 1]. Continuous and nearest-neighbor
// predictions carry confidence 1.0 and therefore never abstain.
std::vector<Prediction> predict_with_threshold(const FittedModel& model,
                                               const Eigen::MatrixXd& x,
                                               double p_threshold);

// --- Model selection ---------------------------------------------------

// Fits each candidate kind on the training split, predicts the validation
// split with threshold 0 (so every row is predicted and precision is simply
// the fraction correct), and returns the index of the most precise
// candidate. Ties favor the earlier candidate, so callers set the preference
// order. Candidates that cannot be fit on this split (logistic_l1 with
// fewer than two distinct training classes) are skipped.
std::size_t best_of(const std::vector<LearnerKind>& candidates,
                    const Eigen::MatrixXd& x_train,
                    const std::vector<std::int32_t>& y_train,
                    const std::vector<std::string>& class_labels,
                    const Eigen::MatrixXd& x_val,
                    const std::vector<std::int32_t>& y_val,
                    const LearnerSettings& settings);

}  // namespace privometer

#endif  // PRIVOMETER_LEARNERS_HPP_
