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
#include <vector>

#include "privometer/metrics.hpp"
#include "privometer/rng.hpp"

namespace {

using namespace privometer;

void BM_PrecisionImprovement(benchmark::State& state) {
  Rng rng(1);
  std::vector<std::pair<double, double>> inputs;
  for (int i = 0; i < 1024; ++i) {
    const double base = rng.unit_real() * 0.99;
    const double attack = base + rng.unit_real() * (1.0 - base);
    inputs.emplace_back(attack, base);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [attack, base] = inputs[i++ & 1023];
    benchmark::DoNotOptimize(precision_improvement(attack, base));
  }
}
BENCHMARK(BM_PrecisionImprovement);

void BM_RocToPr(benchmark::State& state) {
  Rng rng(2);
  std::vector<RocPoint> points;
  for (int i = 0; i < 256; ++i) {
    points.push_back({rng.unit_real(), rng.unit_real()});
  }
  const SkewScenario skew{1.0, static_cast<double>(state.range(0))};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(roc_to_pr(points[i++ & 255], skew));
  }
}
BENCHMARK(BM_RocToPr)->Arg(1)->Arg(30)->Arg(240);

void BM_CountMetrics(benchmark::State& state) {
  Rng rng(3);
  std::vector<Counts> batch;
  for (int i = 0; i < 512; ++i) {
    Counts c;
    c.tp = static_cast<std::int64_t>(rng.below(10000)) + 1;
    c.fp = static_cast<std::int64_t>(rng.below(10000));
    c.fn = static_cast<std::int64_t>(rng.below(10000));
    c.tn = static_cast<std::int64_t>(rng.below(10000));
    c.np = static_cast<std::int64_t>(rng.below(10000));
    batch.push_back(c);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const Counts& c = batch[i++ & 511];
    benchmark::DoNotOptimize(precision(c));
    benchmark::DoNotOptimize(prediction_rate(c));
    benchmark::DoNotOptimize(accuracy(c));
  }
}
BENCHMARK(BM_CountMetrics);

}  // namespace

BENCHMARK_MAIN();
