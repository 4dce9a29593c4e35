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

#include "privometer/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>
#include <utility>

#include "privometer/csv.hpp"
#include "privometer/errors.hpp"
#include "privometer/rng.hpp"
#include "privometer/roc.hpp"

namespace privometer {
namespace {

using nlohmann::json;

void expect_object(const json& j, const std::string& what) {
  if (!j.is_object()) {
    throw ValidationError(what + " must be a JSON object");
  }
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& what) {
  for (const auto& item : j.items()) {
    if (allowed.count(item.key()) == 0) {
      throw ValidationError("unknown key '" + item.key() + "' in " + what);
    }
  }
}

std::string as_string(const json& j, const std::string& what) {
  if (!j.is_string()) throw ValidationError(what + " must be a string");
  return j.get<std::string>();
}

double as_number(const json& j, const std::string& what) {
  if (!j.is_number()) throw ValidationError(what + " must be a number");
  return j.get<double>();
}

std::uint64_t as_uint(const json& j, const std::string& what) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  }
  throw ValidationError(what + " must be a non-negative integer");
}

std::vector<std::string> as_string_list(const json& j,
                                        const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be an array");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (const json& item : j) out.push_back(as_string(item, what + " entry"));
  return out;
}

std::vector<double> as_number_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const json& item : j) out.push_back(as_number(item, what + " entry"));
  return out;
}

LearnerConfig parse_learner(const json& j) {
  expect_object(j, "learner");
  reject_unknown_keys(j,
                      {"kind", "logistic_c", "lasso_alpha", "p_threshold",
                       "complete_budget", "tol", "max_iterations", "cd_tol",
                       "max_sweeps"},
                      "learner");
  LearnerConfig cfg;
  if (j.contains("kind")) {
    cfg.kind = learner_kind_from_string(as_string(j.at("kind"), "kind"));
  }
  if (j.contains("logistic_c")) {
    cfg.settings.logistic_c = as_number(j.at("logistic_c"), "logistic_c");
    if (cfg.settings.logistic_c <= 0.0) {
      throw ValidationError("logistic_c must be positive");
    }
  }
  if (j.contains("lasso_alpha")) {
    cfg.settings.lasso_alpha = as_number(j.at("lasso_alpha"), "lasso_alpha");
    if (cfg.settings.lasso_alpha <= 0.0) {
      throw ValidationError("lasso_alpha must be positive");
    }
  }
  if (j.contains("p_threshold")) {
    cfg.p_threshold = as_number(j.at("p_threshold"), "p_threshold");
    if (cfg.p_threshold < 0.0 || cfg.p_threshold > 1.0) {
      throw ValidationError("p_threshold must be in [0, 1]");
    }
  }
  if (j.contains("complete_budget")) {
    const std::uint64_t budget =
        as_uint(j.at("complete_budget"), "complete_budget");
    if (budget == 0 || budget > 0xffffffffULL) {
      throw ValidationError("complete_budget must be in [1, 2^32)");
    }
    cfg.complete_budget = static_cast<std::uint32_t>(budget);
  }
  if (j.contains("tol")) {
    cfg.settings.optimizer.tol = as_number(j.at("tol"), "tol");
    if (cfg.settings.optimizer.tol <= 0.0) {
      throw ValidationError("tol must be positive");
    }
  }
  if (j.contains("max_iterations")) {
    cfg.settings.optimizer.max_iterations = static_cast<int>(
        as_uint(j.at("max_iterations"), "max_iterations"));
    if (cfg.settings.optimizer.max_iterations < 1) {
      throw ValidationError("max_iterations must be at least 1");
    }
  }
  if (j.contains("cd_tol")) {
    cfg.settings.optimizer.cd_tol = as_number(j.at("cd_tol"), "cd_tol");
    if (cfg.settings.optimizer.cd_tol <= 0.0) {
      throw ValidationError("cd_tol must be positive");
    }
  }
  if (j.contains("max_sweeps")) {
    cfg.settings.optimizer.max_sweeps =
        static_cast<int>(as_uint(j.at("max_sweeps"), "max_sweeps"));
    if (cfg.settings.optimizer.max_sweeps < 1) {
      throw ValidationError("max_sweeps must be at least 1");
    }
  }
  return cfg;
}

ConditionSpec parse_condition(const json& j) {
  expect_object(j, "conditions entry");
  reject_unknown_keys(
      j,
      {"secret", "secrets", "known", "knowledge", "secret_value", "epsilon"},
      "conditions entry");
  ConditionSpec spec;

  const bool has_single = j.contains("secret");
  const bool has_many = j.contains("secrets");
  if (has_single == has_many) {
    throw ValidationError(
        "a conditions entry needs exactly one of 'secret' or 'secrets'");
  }
  if (has_single) {
    spec.secrets.push_back(as_string(j.at("secret"), "secret"));
  } else {
    spec.cross_product = true;
    const json& secrets = j.at("secrets");
    if (secrets.is_string()) {
      if (secrets.get<std::string>() != "all") {
        throw ValidationError(
            "'secrets' must be \"all\" or an array of column names");
      }
      spec.all_secrets = true;
    } else {
      spec.secrets = as_string_list(secrets, "secrets");
      if (spec.secrets.empty()) {
        throw ValidationError("'secrets' must not be an empty array");
      }
    }
  }

  if (j.contains("known")) {
    const json& known = j.at("known");
    if (known.is_string()) {
      spec.known_macro = known.get<std::string>();
      if (spec.known_macro != "all_others" && spec.known_macro != "pii") {
        throw ValidationError(
            "'known' must be \"all_others\", \"pii\", or an array of column "
            "names");
      }
    } else {
      spec.known = as_string_list(known, "known");
      if (spec.known.empty()) {
        throw ValidationError("'known' must not be an empty array");
      }
    }
  }
  // Resolved-config echoes (report replay) carry the expanded column list in
  // "known" plus the label it was derived from in "knowledge". A macro label
  // wins over the frozen expansion so the entry keeps meaning what it
  // originally meant; any other label is just an echo of the explicit list.
  if (j.contains("knowledge")) {
    const std::string label = as_string(j.at("knowledge"), "knowledge");
    if (label == "all_others" || label == "pii") spec.known_macro = label;
  }
  if (spec.known_macro.empty() && spec.known.empty()) {
    throw ValidationError("a conditions entry needs a 'known' set");
  }

  if (j.contains("secret_value")) {
    if (spec.cross_product) {
      throw ValidationError(
          "'secret_value' only applies to a single-secret entry");
    }
    spec.secret_value = as_string(j.at("secret_value"), "secret_value");
  }
  if (j.contains("epsilon")) {
    spec.epsilon = as_number(j.at("epsilon"), "epsilon");
    if (*spec.epsilon <= 0.0) {
      throw ValidationError("epsilon must be positive");
    }
  }
  return spec;
}

std::string resolve_path(const std::string& path,
                         const std::string& base_dir) {
  const std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += ",";
    out += parts[i];
  }
  return out;
}

}  // namespace

RunConfig parse_run_config(const json& config, const std::string& base_dir) {
  expect_object(config, "config");
  reject_unknown_keys(
      config,
      {"dataset", "schema", "seed", "mode", "non_member_count",
       "non_member_fraction", "epsilon", "conditions", "learner", "learners",
       "thresholds", "fractions", "skews", "near_duplicate_tau", "out"},
      "config");

  RunConfig cfg;
  if (config.contains("dataset")) {
    cfg.dataset =
        resolve_path(as_string(config.at("dataset"), "dataset"), base_dir);
  }
  if (config.contains("schema")) {
    cfg.schema =
        resolve_path(as_string(config.at("schema"), "schema"), base_dir);
  }
  if (config.contains("seed")) {
    cfg.seed = as_uint(config.at("seed"), "seed");
    cfg.seed_set = true;
  }
  if (config.contains("mode")) {
    cfg.mode = baseline_mode_from_string(as_string(config.at("mode"), "mode"));
  }
  if (config.contains("non_member_count")) {
    const std::uint64_t count =
        as_uint(config.at("non_member_count"), "non_member_count");
    if (count == 0 || count > 0xffffffffULL) {
      throw ValidationError("non_member_count must be in [1, 2^32)");
    }
    cfg.non_member_count = static_cast<std::uint32_t>(count);
  }
  if (config.contains("non_member_fraction")) {
    if (cfg.non_member_count.has_value()) {
      throw ValidationError(
          "give either non_member_count or non_member_fraction, not both");
    }
    cfg.non_member_fraction =
        as_number(config.at("non_member_fraction"), "non_member_fraction");
    if (cfg.non_member_fraction <= 0.0 || cfg.non_member_fraction >= 1.0) {
      throw ValidationError("non_member_fraction must be in (0, 1)");
    }
  }
  if (config.contains("epsilon")) {
    cfg.default_epsilon = as_number(config.at("epsilon"), "epsilon");
    if (*cfg.default_epsilon <= 0.0) {
      throw ValidationError("epsilon must be positive");
    }
  }
  if (config.contains("conditions")) {
    const json& conditions = config.at("conditions");
    if (!conditions.is_array()) {
      throw ValidationError("'conditions' must be an array");
    }
    for (const json& entry : conditions) {
      cfg.conditions.push_back(parse_condition(entry));
    }
  }

  if (config.contains("learner") && config.contains("learners")) {
    throw ValidationError("give either 'learner' or 'learners', not both");
  }
  if (config.contains("learner")) {
    cfg.learners.push_back(parse_learner(config.at("learner")));
  } else if (config.contains("learners")) {
    const json& learners = config.at("learners");
    if (!learners.is_array() || learners.empty()) {
      throw ValidationError("'learners' must be a non-empty array");
    }
    for (const json& entry : learners) {
      cfg.learners.push_back(parse_learner(entry));
    }
  } else {
    cfg.learners.push_back(LearnerConfig{});
  }

  if (config.contains("thresholds")) {
    cfg.thresholds = as_number_list(config.at("thresholds"), "thresholds");
    if (cfg.thresholds.empty()) {
      throw ValidationError("'thresholds' must not be empty");
    }
    for (const double t : cfg.thresholds) {
      if (t < 0.0 || t > 1.0) {
        throw ValidationError("thresholds must be in [0, 1]");
      }
    }
  } else {
    cfg.thresholds = {0.0, 0.1, 0.2,  0.3,  0.4, 0.5,
                      0.6, 0.7, 0.8,  0.9,  0.95, 0.99};
  }

  if (config.contains("fractions")) {
    cfg.fractions = as_number_list(config.at("fractions"), "fractions");
    if (cfg.fractions.empty()) {
      throw ValidationError("'fractions' must not be empty");
    }
    for (const double f : cfg.fractions) {
      if (f < 0.0 || f > 1.0) {
        throw ValidationError("fractions must be in [0, 1]");
      }
    }
  } else {
    cfg.fractions = {0.0, 0.1, 0.5, 1.0};
  }

  if (config.contains("skews")) {
    const std::vector<std::string> skews =
        as_string_list(config.at("skews"), "skews");
    if (skews.empty()) {
      throw ValidationError("'skews' must not be empty");
    }
    for (const std::string& s : skews) cfg.skews.push_back(parse_skew(s));
  } else {
    cfg.skews = default_skews();
  }

  if (config.contains("near_duplicate_tau")) {
    cfg.near_duplicate_tau =
        as_number(config.at("near_duplicate_tau"), "near_duplicate_tau");
    if (*cfg.near_duplicate_tau <= 0.0) {
      throw ValidationError("near_duplicate_tau must be positive");
    }
  }
  if (config.contains("out")) {
    cfg.out = as_string(config.at("out"), "out");
    if (cfg.out.empty()) throw ValidationError("'out' must not be empty");
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  const std::string text = read_text_file(path);
  json parsed;
  try {
    parsed = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("config file '" + path +
                          "' is not valid JSON: " + e.what());
  }
  // A report file from a previous run carries the config it ran with;
  // accept it directly so any run can be replayed from its own output.
  if (parsed.is_object() && parsed.contains("config") &&
      parsed.at("config").is_object()) {
    parsed = parsed.at("config");
  }
  const std::string base_dir =
      std::filesystem::path(path).parent_path().string();
  return parse_run_config(parsed, base_dir);
}

void require_seed(const RunConfig& config) {
  if (!config.seed_set) {
    throw ValidationError(
        "no seed given: set \"seed\" in the config or pass --seed");
  }
}

std::uint32_t resolve_non_member_count(const RunConfig& config,
                                       std::size_t n_rows) {
  if (n_rows < 2) {
    throw ValidationError(
        "the dataset needs at least 2 rows to hold out non-members");
  }
  if (config.non_member_count.has_value()) {
    if (*config.non_member_count >= n_rows) {
      throw ValidationError("non_member_count " +
                            std::to_string(*config.non_member_count) +
                            " must be smaller than the dataset (" +
                            std::to_string(n_rows) + " rows)");
    }
    return *config.non_member_count;
  }
  const double raw = config.non_member_fraction * static_cast<double>(n_rows);
  std::uint64_t count = static_cast<std::uint64_t>(std::floor(raw));
  if (count < 1) count = 1;
  if (count > n_rows - 1) count = n_rows - 1;
  return static_cast<std::uint32_t>(count);
}

std::vector<ExpandedCondition> expand_conditions(const RunConfig& config,
                                                 const Dataset& dataset) {
  std::vector<ExpandedCondition> out;
  for (const ConditionSpec& spec : config.conditions) {
    std::vector<std::string> secrets = spec.secrets;
    if (spec.all_secrets) secrets = dataset.column_names();

    for (const std::string& secret : secrets) {
      if (!dataset.has_column(secret)) {
        throw ValidationError("no column named '" + secret +
                              "' in the dataset");
      }
      ExpandedCondition expanded;
      expanded.key.secret = secret;
      expanded.key.secret_value = spec.secret_value;

      if (spec.known_macro == "all_others") {
        for (const std::string& name : dataset.column_names()) {
          if (name != secret) expanded.key.known.push_back(name);
        }
        expanded.knowledge_label = "all_others";
      } else if (spec.known_macro == "pii") {
        for (const std::string& name : dataset.column_names()) {
          const ColumnSpec& col =
              dataset.column(dataset.column_index(name)).spec;
          if (col.pii && name != secret) {
            expanded.key.known.push_back(name);
          }
        }
        if (expanded.key.known.empty()) {
          throw ValidationError(
              "the 'pii' knowledge set is empty for secret '" + secret +
              "': the schema marks no other column as PII");
        }
        expanded.knowledge_label = "pii";
      } else {
        for (const std::string& name : spec.known) {
          // Cross-product entries drop the secret from an explicit known
          // list; a single-secret entry naming its own secret is an error
          // the validation below reports.
          if (spec.cross_product && name == secret) continue;
          expanded.key.known.push_back(name);
        }
        if (expanded.key.known.empty()) {
          throw ValidationError("the known set for secret '" + secret +
                                "' is empty");
        }
        expanded.knowledge_label = join(expanded.key.known);
      }

      const ColumnKind kind =
          dataset.column(dataset.column_index(secret)).spec.kind;
      if (kind == ColumnKind::continuous) {
        expanded.key.epsilon =
            spec.epsilon.has_value() ? spec.epsilon : config.default_epsilon;
        if (!expanded.key.epsilon.has_value()) {
          throw ValidationError("continuous secret '" + secret +
                                "' needs an epsilon (entry or top-level)");
        }
      } else {
        // Explicit epsilon on a categorical single-secret entry falls
        // through to validation, which rejects it with a clear message.
        expanded.key.epsilon = spec.cross_product ? std::nullopt
                                                  : spec.epsilon;
      }

      validate_condition(dataset, expanded.key);
      if (spec.known_macro.empty()) {
        // Validation sorts and deduplicates explicit lists; relabel from
        // the canonical key so equal conditions carry equal labels.
        expanded.knowledge_label = join(expanded.key.known);
      }
      out.push_back(std::move(expanded));
    }
  }
  return out;
}

nlohmann::json learner_config_json(const LearnerConfig& learner) {
  json j;
  j["kind"] = to_string(learner.kind);
  j["logistic_c"] = learner.settings.logistic_c;
  j["lasso_alpha"] = learner.settings.lasso_alpha;
  j["p_threshold"] = learner.p_threshold;
  j["complete_budget"] = learner.complete_budget;
  j["tol"] = learner.settings.optimizer.tol;
  j["max_iterations"] = learner.settings.optimizer.max_iterations;
  j["cd_tol"] = learner.settings.optimizer.cd_tol;
  j["max_sweeps"] = learner.settings.optimizer.max_sweeps;
  return j;
}

nlohmann::json resolved_config_json(
    const RunConfig& config, const std::vector<ExpandedCondition>& conditions,
    std::optional<std::uint32_t> non_member_count) {
  json j;
  if (!config.dataset.empty()) j["dataset"] = config.dataset;
  if (config.schema.has_value()) j["schema"] = *config.schema;
  j["seed"] = config.seed;
  j["mode"] = to_string(config.mode);
  if (non_member_count.has_value()) {
    j["non_member_count"] = *non_member_count;
  }
  if (!conditions.empty()) {
    json rows = json::array();
    for (const ExpandedCondition& c : conditions) {
      json row;
      row["secret"] = c.key.secret;
      row["known"] = c.key.known;
      row["knowledge"] = c.knowledge_label;
      if (c.key.secret_value.has_value()) {
        row["secret_value"] = *c.key.secret_value;
      }
      if (c.key.epsilon.has_value()) row["epsilon"] = *c.key.epsilon;
      rows.push_back(std::move(row));
    }
    j["conditions"] = std::move(rows);
  }
  json learners = json::array();
  for (const LearnerConfig& l : config.learners) {
    learners.push_back(learner_config_json(l));
  }
  j["learners"] = std::move(learners);
  j["thresholds"] = config.thresholds;
  j["fractions"] = config.fractions;
  json skews = json::array();
  for (const SkewScenario& s : config.skews) skews.push_back(format_skew(s));
  j["skews"] = std::move(skews);
  if (config.near_duplicate_tau.has_value()) {
    j["near_duplicate_tau"] = *config.near_duplicate_tau;
  }
  return j;
}

std::string config_hash8(const nlohmann::json& resolved,
                         const std::string& command) {
  const std::uint64_t h = fnv1a64(resolved.dump() + "|" + command);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf, 8);
}

}  // namespace privometer
