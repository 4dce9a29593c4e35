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

#include "privometer/errors.hpp"
#include "privometer/learners.hpp"

namespace privometer {

ContinuousModel fit_lasso(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                          double alpha, const OptimizerOptions& options) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  if (n < 1) throw ValidationError("cannot fit on an empty matrix");
  if (y.size() != n) {
    throw ValidationError("design matrix and outcomes disagree on row count");
  }
  if (alpha < 0.0) throw ValidationError("l1 strength must be >= 0");
  if (options.max_sweeps < 1) throw ValidationError("max_sweeps must be >= 1");

  // Cyclic coordinate descent on (1/2n)||y - x*w - b||^2 + alpha*||w||_1.
  // Each coordinate update is an exact one-dimensional minimization via
  // soft-thresholding; the residual is maintained incrementally.
  const Eigen::VectorXd col_scale =
      x.colwise().squaredNorm() / static_cast<double>(n);

  Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
  double b = 0.0;
  Eigen::VectorXd residual = y;  // y - x*w - b with w = 0, b = 0

  bool converged = false;
  int sweeps = 0;
  for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    sweeps = sweep;
    double max_change = 0.0;

    // The intercept is unpenalized: its exact update is the residual mean.
    const double b_shift = residual.mean();
    b += b_shift;
    residual.array() -= b_shift;
    max_change = std::abs(b_shift);

    for (Eigen::Index j = 0; j < d; ++j) {
      if (col_scale[j] == 0.0) continue;  // all-zero column: weight stays 0
      const double rho =
          x.col(j).dot(residual) / static_cast<double>(n) + col_scale[j] * w[j];
      const double w_new = soft_threshold(rho, alpha) / col_scale[j];
      const double delta = w_new - w[j];
      if (delta != 0.0) {
        residual -= x.col(j) * delta;
        w[j] = w_new;
      }
      max_change = std::max(max_change, std::abs(delta));
    }

    if (max_change < options.cd_tol) {
      converged = true;
      break;
    }
  }

  ContinuousModel model;
  model.weights = std::move(w);
  model.intercept = b;
  model.converged = converged;
  model.sweeps = sweeps;
  return model;
}

double lasso_kkt_residual(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                          const Eigen::VectorXd& weights, double intercept,
                          double alpha) {
  const Eigen::Index n = x.rows();
  if (n < 1) throw ValidationError("cannot evaluate on an empty matrix");
  if (y.size() != n || weights.size() != x.cols()) {
    throw ValidationError("shape mismatch between matrix, outcomes and "
                          "weights");
  }
  if (alpha < 0.0) throw ValidationError("l1 strength must be >= 0");

  const Eigen::VectorXd residual =
      y - x * weights - Eigen::VectorXd::Constant(n, intercept);
  // Gradient of the smooth part w.r.t. w_j is -x_j . residual / n.
  const Eigen::VectorXd grad = -(x.transpose() * residual) /
                               static_cast<double>(n);

  double worst = std::abs(residual.mean());  // intercept stationarity
  for (Eigen::Index j = 0; j < weights.size(); ++j) {
    double violation = 0.0;
    if (weights[j] > 0.0) {
      violation = std::abs(grad[j] + alpha);
    } else if (weights[j] < 0.0) {
      violation = std::abs(grad[j] - alpha);
    } else {
      violation = std::max(0.0, std::abs(grad[j]) - alpha);
    }
    worst = std::max(worst, violation);
  }
  return worst;
}

}  // namespace privometer
