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
#include <cstddef>
#include <string>
#include <vector>

#include "privometer/errors.hpp"
#include "privometer/learners.hpp"

namespace privometer {
namespace {

// Once backtracking pushes the local Lipschitz estimate this far, further
// doubling only loses precision; accept the step instead of looping forever
// on floating-point noise.
constexpr double kMaxLipschitz = 1e18;

void check_inputs(const Eigen::MatrixXd& x, const std::vector<std::int32_t>& y,
                  const Eigen::MatrixXd& weights,
                  const Eigen::VectorXd& intercepts) {
  const auto n = static_cast<std::size_t>(x.rows());
  const auto k = static_cast<int>(weights.rows());
  if (y.size() != n) {
    throw ValidationError("design matrix and class indices disagree on row "
                          "count");
  }
  if (weights.cols() != x.cols()) {
    throw ValidationError("weights and design matrix disagree on feature "
                          "count");
  }
  if (intercepts.size() != k) {
    throw ValidationError("weights and intercepts disagree on class count");
  }
  for (const std::int32_t cls : y) {
    if (cls < 0 || cls >= k) {
      throw ValidationError("class index out of range");
    }
  }
}

// Mean cross-entropy and softmax probabilities at (weights, intercepts),
// computed with the max-shift trick so large logits cannot overflow.
// `probs` may be null when only the loss is needed.
double mean_cross_entropy(const Eigen::MatrixXd& x, const std::vector<std::int32_t>& y,
                          const Eigen::MatrixXd& weights,
                          const Eigen::VectorXd& intercepts,
                          Eigen::MatrixXd* probs) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd logits =
      (x * weights.transpose()).rowwise() + intercepts.transpose();
  double loss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double row_max = logits.row(i).maxCoeff();
    const Eigen::ArrayXd shifted =
        (logits.row(i).transpose().array() - row_max).exp();
    const double total = shifted.sum();
    loss += std::log(total) + row_max - logits(i, y[static_cast<std::size_t>(i)]);
    if (probs != nullptr) {
      logits.row(i) = (shifted / total).matrix().transpose();
    }
  }
  if (probs != nullptr) {
    *probs = std::move(logits);
  }
  return loss / static_cast<double>(n);
}

// Gradients of the mean cross-entropy: grad_w = (P - Y)^T X / n,
// grad_b = column means of (P - Y), with Y the one-hot truth matrix.
void smooth_gradient(const Eigen::MatrixXd& x, const std::vector<std::int32_t>& y,
                     Eigen::MatrixXd probs, Eigen::MatrixXd* grad_weights,
                     Eigen::VectorXd* grad_intercept) {
  const Eigen::Index n = x.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    probs(i, y[static_cast<std::size_t>(i)]) -= 1.0;
  }
  *grad_weights = probs.transpose() * x / static_cast<double>(n);
  *grad_intercept = probs.colwise().mean().transpose();
}

Eigen::MatrixXd soft_threshold_matrix(const Eigen::MatrixXd& v, double t) {
  return v.unaryExpr([t](double e) { return soft_threshold(e, t); });
}

}  // namespace

double logistic_objective(const Eigen::MatrixXd& x, const std::vector<std::int32_t>& y,
                          const Eigen::MatrixXd& weights,
                          const Eigen::VectorXd& intercepts, double strength) {
  check_inputs(x, y, weights, intercepts);
  if (strength < 0.0) throw ValidationError("l1 strength must be >= 0");
  return mean_cross_entropy(x, y, weights, intercepts, nullptr) +
         strength * weights.cwiseAbs().sum();
}

void logistic_gradient(const Eigen::MatrixXd& x, const std::vector<std::int32_t>& y,
                       const Eigen::MatrixXd& weights,
                       const Eigen::VectorXd& intercepts,
                       Eigen::MatrixXd* grad_weights,
                       Eigen::VectorXd* grad_intercept) {
  check_inputs(x, y, weights, intercepts);
  Eigen::MatrixXd probs;
  mean_cross_entropy(x, y, weights, intercepts, &probs);
  smooth_gradient(x, y, std::move(probs), grad_weights, grad_intercept);
}

CategoricalModel fit_logistic_l1(const Eigen::MatrixXd& x,
                                 const std::vector<std::int32_t>& y,
                                 const std::vector<std::string>& class_labels,
                                 double strength,
                                 const OptimizerOptions& options) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  const auto k = static_cast<Eigen::Index>(class_labels.size());
  if (n < 1) throw ValidationError("cannot fit on an empty matrix");
  if (k < 1) throw ValidationError("need at least one class label");
  if (strength < 0.0) throw ValidationError("l1 strength must be >= 0");
  if (options.max_iterations < 1) {
    throw ValidationError("max_iterations must be >= 1");
  }
  check_inputs(x, y, Eigen::MatrixXd::Zero(k, d), Eigen::VectorXd::Zero(k));

  // Accelerated proximal gradient descent (FISTA) with backtracking line
  // search. The extrapolated point (wy, by) carries the momentum; a
  // function-value increase triggers an adaptive restart that resets the
  // momentum instead of letting the iterates oscillate.
  Eigen::MatrixXd wx = Eigen::MatrixXd::Zero(k, d);   // current iterate
  Eigen::VectorXd bx = Eigen::VectorXd::Zero(k);
  Eigen::MatrixXd wy = wx;                            // extrapolated point
  Eigen::VectorXd by = bx;
  double momentum = 1.0;
  double lipschitz = 1.0;

  double objective_prev =
      mean_cross_entropy(x, y, wx, bx, nullptr) + strength * wx.cwiseAbs().sum();
  double best_objective = objective_prev;
  Eigen::MatrixXd best_w = wx;
  Eigen::VectorXd best_b = bx;

  bool converged = false;
  int iterations = 0;

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    iterations = iter;

    Eigen::MatrixXd probs;
    const double smooth_y = mean_cross_entropy(x, y, wy, by, &probs);
    Eigen::MatrixXd grad_w;
    Eigen::VectorXd grad_b;
    smooth_gradient(x, y, std::move(probs), &grad_w, &grad_b);

    // Backtracking: double the Lipschitz estimate until the quadratic upper
    // bound at (wy, by) holds for the proximal step it induces.
    Eigen::MatrixXd w_next;
    Eigen::VectorXd b_next;
    double smooth_next = 0.0;
    for (;;) {
      const double step = 1.0 / lipschitz;
      w_next = soft_threshold_matrix(wy - step * grad_w, step * strength);
      b_next = by - step * grad_b;
      smooth_next = mean_cross_entropy(x, y, w_next, b_next, nullptr);
      const Eigen::MatrixXd dw = w_next - wy;
      const Eigen::VectorXd db = b_next - by;
      const double bound = smooth_y + grad_w.cwiseProduct(dw).sum() +
                           grad_b.dot(db) +
                           0.5 * lipschitz *
                               (dw.squaredNorm() + db.squaredNorm());
      if (smooth_next <= bound || lipschitz >= kMaxLipschitz) break;
      lipschitz *= 2.0;
    }

    const double objective =
        smooth_next + strength * w_next.cwiseAbs().sum();

    if (objective < best_objective) {
      best_objective = objective;
      best_w = w_next;
      best_b = b_next;
    }

    const double decrease = objective_prev - objective;
    if (decrease >= 0.0 && decrease < options.tol) {
      converged = true;
      wx = w_next;
      bx = b_next;
      break;
    }

    if (objective > objective_prev) {
      // Adaptive restart: momentum overshot, so drop it and continue as
      // plain proximal gradient from the new iterate.
      momentum = 1.0;
      wy = w_next;
      by = b_next;
    } else {
      const double momentum_next =
          (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum)) / 2.0;
      const double mix = (momentum - 1.0) / momentum_next;
      wy = w_next + mix * (w_next - wx);
      by = b_next + mix * (b_next - bx);
      momentum = momentum_next;
    }

    wx = w_next;
    bx = b_next;
    objective_prev = objective;
  }

  CategoricalModel model;
  model.class_labels = class_labels;
  model.weights = best_w;
  model.intercepts = best_b;
  model.converged = converged;
  model.iterations = iterations;
  model.objective = best_objective;
  return model;
}

}  // namespace privometer
