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

#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "privometer/encode.hpp"
#include "privometer/learners.hpp"
#include "privometer/rng.hpp"

namespace {

using namespace privometer;

struct Problem {
  Eigen::MatrixXd x;
  std::vector<std::int32_t> labels;
  Eigen::VectorXd y;
};

Problem make_problem(int n, int d, int k, std::uint64_t seed) {
  Rng rng(seed);
  Problem p;
  p.x.resize(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) p.x(i, j) = rng.unit_real() * 2.0 - 1.0;
  }
  p.labels.resize(n);
  p.y.resize(n);
  for (int i = 0; i < n; ++i) {
    // Make the label depend on the features so the fit does real work.
    const double score = p.x.row(i).sum();
    p.labels[i] = static_cast<std::int32_t>(
        (score + static_cast<double>(rng.below(2))) > 0.0 ? 1 : 0) %
        k;
    if (k > 2 && rng.bernoulli(0.2)) {
      p.labels[i] = static_cast<std::int32_t>(rng.below(k));
    }
    p.y[i] = p.x(i, 0) * 1.5 - p.x(i, d - 1) * 0.8 + 0.1 * rng.unit_real();
  }
  return p;
}

void BM_LogisticFit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Problem p = make_problem(n, 8, 3, 11);
  std::vector<std::string> classes = {"a", "b", "c"};
  OptimizerOptions options;
  const double strength = 1.0 / (0.01 * static_cast<double>(n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fit_logistic_l1(p.x, p.labels, classes, strength, options));
  }
}
BENCHMARK(BM_LogisticFit)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_LassoFit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Problem p = make_problem(n, 8, 2, 12);
  OptimizerOptions options;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_lasso(p.x, p.y, 0.1, options));
  }
}
BENCHMARK(BM_LassoFit)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_NearestNeighborPredict(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Problem p = make_problem(n, 8, 2, 13);
  FeatureMatrix x;
  x.design = p.x;
  for (int j = 0; j < 8; ++j) x.feature_names.push_back("f" + std::to_string(j));
  for (int i = 0; i < n; ++i) x.row_ids.push_back(static_cast<std::uint32_t>(i));
  EncodedData y;
  y.target_kind = ColumnKind::categorical;
  y.class_labels = {"a", "b"};
  y.y_class = p.labels;
  for (int i = 0; i < n; ++i) y.y_label.push_back(y.class_labels[p.labels[i]]);
  const FittedModel model =
      fit_model(LearnerKind::nearest_neighbor, x, y, LearnerSettings{});
  const Problem probe = make_problem(64, 8, 2, 14);
  for (auto _ : state) {
    benchmark::DoNotOptimize(predict_with_threshold(model, probe.x, 0.0));
  }
}
BENCHMARK(BM_NearestNeighborPredict)
    ->Arg(1000)
    ->Arg(5000)
    ->Unit(benchmark::kMicrosecond);

}  // namespace
