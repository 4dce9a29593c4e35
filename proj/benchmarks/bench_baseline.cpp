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

#include "privometer/baseline.hpp"
#include "privometer/dataset.hpp"
#include "support/synthetic.hpp"

namespace {

using namespace privometer;
using privometer::testing::make_parity_dataset;

ConditionKey parity_condition() {
  ConditionKey key;
  key.known = {"group", "noise"};
  key.secret = "secret";
  return key;
}

void BM_RelaxedBaseline(benchmark::State& state) {
  const Dataset d = make_parity_dataset(static_cast<std::size_t>(state.range(0)), 31);
  const ConditionKey key = parity_condition();
  LearnerConfig cfg;
  cfg.kind = LearnerKind::logistic_l1;
  cfg.settings.logistic_c = 10.0;
  const std::uint32_t non_members =
      static_cast<std::uint32_t>(state.range(0) / 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_baseline(
        d, key, cfg, BaselineMode::relaxed, non_members, 7));
  }
}
BENCHMARK(BM_RelaxedBaseline)
    ->Arg(400)
    ->Arg(1600)
    ->Unit(benchmark::kMillisecond);

void BM_CompleteBaseline(benchmark::State& state) {
  const Dataset d = make_parity_dataset(800, 32);
  const ConditionKey key = parity_condition();
  LearnerConfig cfg;
  cfg.kind = LearnerKind::logistic_l1;
  cfg.settings.logistic_c = 10.0;
  cfg.complete_budget = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        compute_baseline(d, key, cfg, BaselineMode::complete, 200, 7));
  }
}
BENCHMARK(BM_CompleteBaseline)
    ->Arg(25)
    ->Arg(100)
    ->Unit(benchmark::kMillisecond);

void BM_ThresholdSweep(benchmark::State& state) {
  const Dataset d = make_parity_dataset(1200, 33);
  const ConditionKey key = parity_condition();
  LearnerConfig cfg;
  cfg.kind = LearnerKind::logistic_l1;
  cfg.settings.logistic_c = 10.0;
  const PreparedBaseline prepared = prepare_baseline(d, key, cfg, 300, 7);
  const std::vector<double> grid = {0.0,  0.1,  0.2,  0.3, 0.4,  0.5,
                                    0.6,  0.7,  0.8,  0.9, 0.95, 0.99};
  for (auto _ : state) {
    benchmark::DoNotOptimize(threshold_sweep(prepared, grid));
  }
}
BENCHMARK(BM_ThresholdSweep)->Unit(benchmark::kMicrosecond);

}  // namespace
