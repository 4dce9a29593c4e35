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

#ifndef PRIVOMETER_CONFIG_HPP_
#define PRIVOMETER_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "privometer/baseline.hpp"
#include "privometer/dataset.hpp"
#include "privometer/metrics.hpp"

namespace privometer {

// One entry of the config's "conditions" array, before expansion against a
// dataset. A single-secret entry names one secret; a cross-product entry
// names several (or the "all" macro) and is expanded into one condition per
// secret. The known set is either an explicit column list or a macro:
// "all_others" (every other column) or "pii" (the schema's PII columns,
// minus the secret).
struct ConditionSpec {
  std::vector<std::string> secrets;  // explicit secrets (empty when macro)
  bool all_secrets = false;          // "secrets": "all"
  bool cross_product = false;        // parsed from "secrets" rather than "secret"
  std::vector<std::string> known;    // explicit known set (empty when macro)
  std::string known_macro;           // "all_others", "pii", or "" (explicit)
  std::optional<std::string> secret_value;  // single-secret entries only
  std::optional<double> epsilon;
};

// A fully resolved run configuration. Everything a command needs is in here;
// reports embed its canonical JSON echo so any run can be reproduced from
// its own output.
struct RunConfig {
  std::string dataset;                 // empty only for roc2pr
  std::optional<std::string> schema;   // optional schema file
  std::uint64_t seed = 0;
  bool seed_set = false;               // seeds are never defaulted silently
  BaselineMode mode = BaselineMode::relaxed;
  std::optional<std::uint32_t> non_member_count;
  double non_member_fraction = 0.3;
  std::optional<double> default_epsilon;  // fallback for continuous secrets
  std::vector<ConditionSpec> conditions;
  std::vector<LearnerConfig> learners;    // never empty; front() is primary
  std::vector<double> thresholds;
  std::vector<double> fractions;
  std::vector<SkewScenario> skews;
  std::optional<double> near_duplicate_tau;
  std::string out = "out";

  const LearnerConfig& learner() const { return learners.front(); }
};

// A condition expanded against a concrete dataset, paired with the
// human-readable knowledge-set label ("all_others", "pii", or the explicit
// column list) used in report rows.
struct ExpandedCondition {
  ConditionKey key;
  std::string knowledge_label;
};

// Parses a config object. Relative dataset/schema paths are resolved
// against `base_dir`. Unknown keys are rejected so typos fail loudly.
RunConfig parse_run_config(const nlohmann::json& config,
                           const std::string& base_dir);

// Reads a config file. A report file written by a previous run is accepted
// too: its embedded "config" object is unwrapped and parsed as-is.
RunConfig load_run_config(const std::string& path);

// Throws unless a seed was given (config key or --seed). Runs are never
// seeded from the clock: an unseeded run would be unreproducible.
void require_seed(const RunConfig& config);

// Concrete non-member count for a dataset of `n_rows` rows: the explicit
// count if one was given, otherwise floor(fraction * n_rows), clamped to
// [1, n_rows - 1].
std::uint32_t resolve_non_member_count(const RunConfig& config,
                                       std::size_t n_rows);

// Expands every conditions entry against the dataset, resolving macros and
// filling epsilon defaults. Each expanded key is validated (columns exist,
// secret not known, epsilon exactly for continuous secrets).
std::vector<ExpandedCondition> expand_conditions(const RunConfig& config,
                                                 const Dataset& dataset);

// Canonical JSON echo of a resolved configuration: concrete expanded
// conditions, a concrete non-member count, and every learner knob. The
// output directory is excluded on purpose — where a report is written must
// not change its bytes.
nlohmann::json resolved_config_json(
    const RunConfig& config, const std::vector<ExpandedCondition>& conditions,
    std::optional<std::uint32_t> non_member_count);

// First 8 hex digits of a 64-bit FNV-1a hash over the canonical resolved
// config plus the command name. Names the run directory, so the same
// configuration always lands in the same place.
std::string config_hash8(const nlohmann::json& resolved,
                         const std::string& command);

// JSON echo of one learner configuration (shared by resolved_config_json
// and the per-row report entries).
nlohmann::json learner_config_json(const LearnerConfig& learner);

}  // namespace privometer

#endif  // PRIVOMETER_CONFIG_HPP_
