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

#include "privometer/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <map>
#include <optional>
#include <utility>

#include "privometer/attack.hpp"
#include "privometer/csv.hpp"
#include "privometer/errors.hpp"
#include "privometer/roc.hpp"

namespace privometer {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

Dataset load_dataset(const RunConfig& config) {
  if (config.dataset.empty()) {
    throw ValidationError("this command needs a dataset: set \"dataset\"");
  }
  std::optional<std::vector<ColumnSpec>> schema;
  if (config.schema.has_value()) schema = load_schema(*config.schema);
  return load_csv(config.dataset, schema);
}

std::vector<ExpandedCondition> require_conditions(const RunConfig& config,
                                                  const Dataset& dataset) {
  if (config.conditions.empty()) {
    throw ValidationError("the config lists no conditions");
  }
  std::vector<ExpandedCondition> expanded =
      expand_conditions(config, dataset);
  if (expanded.empty()) {
    throw ValidationError("the config expands to no conditions");
  }
  return expanded;
}

// Next append-only run directory under <out>/<command>-<hash>: scans the
// existing run-NNN entries and claims NNN+1 (run-001 when empty).
std::string make_run_dir(const std::string& out, const std::string& command,
                         const std::string& hash8) {
  const fs::path root = fs::path(out) / (command + "-" + hash8);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) {
    throw IoError("cannot create '" + root.string() + "': " + ec.message());
  }
  unsigned max_index = 0;
  for (const auto& entry : fs::directory_iterator(root)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("run-", 0) != 0) continue;
    unsigned index = 0;
    const char* begin = name.data() + 4;
    const char* end = name.data() + name.size();
    const auto [ptr, parse_ec] = std::from_chars(begin, end, index);
    if (parse_ec == std::errc() && ptr == end && index > max_index) {
      max_index = index;
    }
  }
  char suffix[16];
  std::snprintf(suffix, sizeof(suffix), "run-%03u", max_index + 1);
  const fs::path run_dir = root / suffix;
  fs::create_directories(run_dir, ec);
  if (ec) {
    throw IoError("cannot create '" + run_dir.string() +
                  "': " + ec.message());
  }
  return run_dir.string();
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

// Persists one run. Everything except run_meta.json is a pure function of
// the resolved config, so reruns are byte-identical file by file.
void persist_run(const RunConfig& config, const std::string& command,
                 const json& resolved, CommandResult* result) {
  result->run_dir = make_run_dir(config.out, command,
                                 config_hash8(resolved, command));
  const fs::path dir(result->run_dir);
  write_text_file(dir / "resolved_config.json", resolved.dump(2) + "\n");
  write_text_file(dir / (command + "_report.json"),
                  result->report.dump(2) + "\n");
  for (const CsvFile& file : result->csv_files) {
    write_text_file(dir / file.name, file.text);
  }
  json meta;
  meta["written_at"] = utc_timestamp();
  write_text_file(dir / "run_meta.json", meta.dump(2) + "\n");
}

json counts_json(const Counts& counts) {
  json j;
  j["tp"] = counts.tp;
  j["fp"] = counts.fp;
  j["fn"] = counts.fn;
  j["tn"] = counts.tn;
  j["np"] = counts.np;
  return j;
}

json optional_json(const std::optional<double>& value) {
  if (value.has_value()) return json(*value);
  return json(nullptr);
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string optional_text(const std::optional<double>& value) {
  return value.has_value() ? format_double(*value) : std::string();
}

}  // namespace

CommandResult cmd_baseline(const RunConfig& config) {
  require_seed(config);
  const Dataset original = load_dataset(config);
  const std::vector<ExpandedCondition> conditions =
      require_conditions(config, original);
  const std::uint32_t non_members =
      resolve_non_member_count(config, original.row_count());
  const json resolved =
      resolved_config_json(config, conditions, non_members);

  json results = json::array();
  std::string csv = "secret,kind,knowledge,learner,p_base,coverage,"
                    "coverage_kind,n_targets,tp,fp,np,converged\n";
  for (const ExpandedCondition& c : conditions) {
    const BaselineResult base =
        compute_baseline(original, c.key, config.learner(), config.mode,
                         non_members, config.seed);
    const ColumnKind kind =
        original.column(original.column_index(c.key.secret)).spec.kind;

    json row;
    row["secret"] = c.key.secret;
    row["kind"] = to_string(kind);
    row["knowledge"] = c.knowledge_label;
    row["known"] = c.key.known;
    if (c.key.secret_value.has_value()) {
      row["secret_value"] = *c.key.secret_value;
    }
    if (c.key.epsilon.has_value()) row["epsilon"] = *c.key.epsilon;
    row["mode"] = to_string(base.mode);
    row["learner"] = base.analysis_descriptor;
    row["p_base"] = base.p_base;
    row["coverage"] = base.coverage_base;
    row["coverage_kind"] = to_string(base.coverage_kind);
    row["n_targets"] = base.n_targets;
    row["counts"] = counts_json(base.counts);
    row["converged"] = base.converged;
    results.push_back(std::move(row));

    append_csv_row(csv, {c.key.secret, to_string(kind), c.knowledge_label,
                         base.analysis_descriptor, format_double(base.p_base),
                         format_double(base.coverage_base),
                         to_string(base.coverage_kind),
                         std::to_string(base.n_targets),
                         std::to_string(base.counts.tp),
                         std::to_string(base.counts.fp),
                         std::to_string(base.counts.np),
                         bool_text(base.converged)});
  }

  CommandResult result;
  result.report["command"] = "baseline";
  result.report["config"] = resolved;
  result.report["results"] = std::move(results);
  if (config.near_duplicate_tau.has_value()) {
    json dupes = json::array();
    for (const NearDuplicate& d :
         flag_near_duplicates(original, *config.near_duplicate_tau)) {
      json row;
      row["id_a"] = d.id_a;
      row["id_b"] = d.id_b;
      row["distance"] = d.distance;
      dupes.push_back(std::move(row));
    }
    result.report["near_duplicates"] = std::move(dupes);
  }
  result.csv_files.push_back({"baseline_summary.csv", std::move(csv)});
  persist_run(config, "baseline", resolved, &result);
  return result;
}

CommandResult cmd_sweep(const RunConfig& config) {
  require_seed(config);
  const Dataset original = load_dataset(config);
  std::vector<ExpandedCondition> conditions =
      require_conditions(config, original);

  // Threshold sweeps only make sense where abstention can happen: plain
  // categorical conditions. Others are dropped; none left is an error.
  std::vector<ExpandedCondition> sweepable;
  for (ExpandedCondition& c : conditions) {
    const ColumnKind kind =
        original.column(original.column_index(c.key.secret)).spec.kind;
    if (kind == ColumnKind::categorical && !c.key.secret_value.has_value()) {
      sweepable.push_back(std::move(c));
    }
  }
  if (sweepable.empty()) {
    throw ValidationError(
        "sweep needs at least one plain categorical condition");
  }

  const std::uint32_t non_members =
      resolve_non_member_count(config, original.row_count());
  const json resolved =
      resolved_config_json(config, sweepable, non_members);

  json results = json::array();
  std::string csv = "secret,p_thresh,precision,prediction_rate\n";
  for (const ExpandedCondition& c : sweepable) {
    const PreparedBaseline prepared = prepare_baseline(
        original, c.key, config.learner(), non_members, config.seed);
    const std::vector<SweepPoint> points =
        threshold_sweep(prepared, config.thresholds);

    json group;
    group["secret"] = c.key.secret;
    group["knowledge"] = c.knowledge_label;
    group["learner"] = prepared.analysis_descriptor;
    json point_rows = json::array();
    for (const SweepPoint& p : points) {
      json row;
      row["p_thresh"] = p.p_thresh;
      row["precision"] = optional_json(p.p_base);
      row["prediction_rate"] = p.prediction_rate;
      point_rows.push_back(std::move(row));
      append_csv_row(csv, {c.key.secret, format_double(p.p_thresh),
                           optional_text(p.p_base),
                           format_double(p.prediction_rate)});
    }
    group["points"] = std::move(point_rows);
    results.push_back(std::move(group));
  }

  CommandResult result;
  result.report["command"] = "sweep";
  result.report["config"] = resolved;
  result.report["results"] = std::move(results);
  result.csv_files.push_back({"sweep_summary.csv", std::move(csv)});
  persist_run(config, "sweep", resolved, &result);
  return result;
}

CommandResult cmd_compare(const RunConfig& config,
                          const std::vector<std::string>& attack_paths) {
  require_seed(config);
  if (attack_paths.empty()) {
    throw ValidationError("give at least one attack file");
  }
  const Dataset original = load_dataset(config);
  const std::vector<ExpandedCondition> conditions =
      require_conditions(config, original);
  if (conditions.size() != 1) {
    throw ValidationError(
        "compare needs a config that expands to exactly one condition; got " +
        std::to_string(conditions.size()));
  }
  const ConditionKey& condition = conditions.front().key;
  const json resolved = resolved_config_json(config, conditions, std::nullopt);

  // Ingest each file on its own: a malformed submission becomes an error
  // entry in place instead of sinking the whole batch.
  std::vector<std::optional<AttackSubmission>> parsed;
  std::vector<std::string> parse_errors(attack_paths.size());
  std::vector<AttackSubmission> valid;
  for (std::size_t i = 0; i < attack_paths.size(); ++i) {
    try {
      AttackSubmission sub = ingest_attack(attack_paths[i], original,
                                           condition);
      parsed.emplace_back(std::move(sub));
      valid.push_back(*parsed.back());
    } catch (const Error& e) {
      parsed.emplace_back(std::nullopt);
      parse_errors[i] = e.what();
    }
  }
  BatchStats stats;
  const std::vector<BatchEntry> entries =
      batch_compare(valid, original, config.learner(), config.seed, &stats);

  json results = json::array();
  std::string csv = "attack,outcome,n_targets,n_predicted,c_atk,p_atk,"
                    "p_base,pi,coverage_kind,converged\n";
  bool any_error = false;
  std::size_t next_entry = 0;
  for (std::size_t i = 0; i < attack_paths.size(); ++i) {
    const std::string name =
        fs::path(attack_paths[i]).stem().string();
    json row;
    if (!parsed[i].has_value()) {
      any_error = true;
      row["attack"] = name;
      row["outcome"] = "error";
      row["error"] = parse_errors[i];
      append_csv_row(csv, {name, "error", "", "", "", "", "", "", "", ""});
      results.push_back(std::move(row));
      continue;
    }
    const BatchEntry& entry = entries[next_entry++];
    row["attack"] = entry.attack_name;
    if (entry.error.has_value()) {
      any_error = true;
      row["outcome"] = "error";
      row["error"] = *entry.error;
      append_csv_row(csv,
                     {entry.attack_name, "error", "", "", "", "", "", "", "",
                      ""});
      results.push_back(std::move(row));
      continue;
    }
    const ComparisonReport& report = *entry.report;
    row["outcome"] = to_string(report.outcome);
    row["n_targets"] = report.n_targets;
    row["n_predicted"] = report.n_predicted;
    row["c_atk"] = report.c_atk;
    row["p_atk"] = optional_json(report.p_atk);
    row["p_base"] = optional_json(report.p_base);
    row["pi"] = optional_json(report.pi);
    const bool scored =
        report.outcome != ComparisonOutcome::no_prediction;
    if (scored) {
      row["coverage_kind"] = to_string(report.coverage_kind);
      row["attack_counts"] = counts_json(report.attack_counts);
      row["baseline"] = {{"learner", report.baseline_descriptor},
                         {"converged", report.baseline_converged}};
    }
    append_csv_row(
        csv, {report.attack_name, to_string(report.outcome),
              std::to_string(report.n_targets),
              std::to_string(report.n_predicted), format_double(report.c_atk),
              optional_text(report.p_atk), optional_text(report.p_base),
              optional_text(report.pi),
              scored ? to_string(report.coverage_kind) : std::string(),
              scored ? bool_text(report.baseline_converged) : std::string()});
    results.push_back(std::move(row));
  }

  CommandResult result;
  result.report["command"] = "compare";
  result.report["config"] = resolved;
  result.report["results"] = std::move(results);
  result.report["baseline_fits"] = stats.baseline_fits;
  result.report["cache_hits"] = stats.cache_hits;
  result.csv_files.push_back({"compare_summary.csv", std::move(csv)});
  result.exit_code = any_error ? 1 : 0;
  persist_run(config, "compare", resolved, &result);
  return result;
}

CommandResult cmd_replication(const RunConfig& config) {
  require_seed(config);
  const Dataset original = load_dataset(config);
  const std::vector<ExpandedCondition> conditions =
      require_conditions(config, original);
  const std::uint32_t non_members =
      resolve_non_member_count(config, original.row_count());
  const json resolved =
      resolved_config_json(config, conditions, non_members);

  std::vector<ConditionKey> keys;
  std::map<std::string, std::string> labels;
  for (const ExpandedCondition& c : conditions) {
    keys.push_back(c.key);
    labels[c.key.describe()] = c.knowledge_label;
  }
  const ReplicationReport study = replication_study(
      original, config.fractions, keys, config.learners, non_members,
      config.seed);

  json results = json::array();
  std::string csv = "fraction,secret,knowledge,learner,p_base,coverage,"
                    "coverage_kind,delta_vs_f0,flagged,converged\n";
  for (const ReplicationRow& r : study.rows) {
    const std::string knowledge = labels.at(r.condition.describe());
    json row;
    row["fraction"] = r.fraction;
    row["secret"] = r.condition.secret;
    row["knowledge"] = knowledge;
    row["learner"] = to_string(r.learner_kind);
    row["p_base"] = r.p_base;
    row["coverage"] = r.coverage_base;
    row["coverage_kind"] = to_string(r.coverage_kind);
    row["delta_vs_f0"] = r.delta_vs_f0;
    row["flagged"] = r.flagged;
    row["converged"] = r.converged;
    results.push_back(std::move(row));
    append_csv_row(
        csv, {format_double(r.fraction), r.condition.secret, knowledge,
              to_string(r.learner_kind), format_double(r.p_base),
              format_double(r.coverage_base), to_string(r.coverage_kind),
              format_double(r.delta_vs_f0), bool_text(r.flagged),
              bool_text(r.converged)});
  }

  CommandResult result;
  result.report["command"] = "replicate";
  result.report["config"] = resolved;
  result.report["n_targets"] = study.n_targets;
  result.report["fractions"] = study.fractions;
  result.report["results"] = std::move(results);
  result.csv_files.push_back({"replicate_summary.csv", std::move(csv)});
  persist_run(config, "replicate", resolved, &result);
  return result;
}

CommandResult cmd_roc2pr(const RunConfig& config, const RocInputs& inputs) {
  std::vector<RocCurve> curves;
  if (inputs.bundled) {
    auto [shokri, carlini] = bundled_fixture();
    curves.push_back(std::move(shokri));
    curves.push_back(std::move(carlini));
  }
  for (const std::string& path : inputs.roc_paths) {
    curves.push_back(load_roc(path));
  }
  if (curves.empty()) {
    throw ValidationError("give --roc files and/or --bundled");
  }
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t k = i + 1; k < curves.size(); ++k) {
      if (curves[i].name == curves[k].name) {
        throw ValidationError("two curves are both named '" +
                              curves[i].name + "'");
      }
    }
  }
  const std::vector<PrTable> tables = pr_tables(curves, config.skews);
  const json resolved = resolved_config_json(config, {}, std::nullopt);

  CommandResult result;
  json table_rows = json::array();
  for (const PrTable& table : tables) {
    std::string csv = "curve,m,n,fpr,tpr,precision,recall\n";
    json rows = json::array();
    for (const PrRow& r : table.rows) {
      json row;
      row["skew"] = format_skew(r.skew);
      row["m"] = r.skew.m;
      row["n"] = r.skew.n;
      row["fpr"] = r.fpr;
      row["tpr"] = r.tpr;
      row["precision"] = optional_json(r.precision);
      row["recall"] = r.recall;
      rows.push_back(std::move(row));
      append_csv_row(csv, {table.curve_name, format_double(r.skew.m),
                           format_double(r.skew.n), format_double(r.fpr),
                           format_double(r.tpr), optional_text(r.precision),
                           format_double(r.recall)});
    }
    json entry;
    entry["curve"] = table.curve_name;
    entry["rows"] = std::move(rows);
    table_rows.push_back(std::move(entry));
    result.csv_files.push_back({table.curve_name + "_pr.csv",
                                std::move(csv)});
  }
  result.report["command"] = "roc2pr";
  result.report["config"] = resolved;
  result.report["inputs"] = {{"bundled", inputs.bundled},
                             {"files", inputs.roc_paths}};
  result.report["tables"] = std::move(table_rows);
  persist_run(config, "roc2pr", resolved, &result);
  return result;
}

}  // namespace privometer
