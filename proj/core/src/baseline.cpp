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

#include "privometer/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <utility>

#include "privometer/csv.hpp"
#include "privometer/errors.hpp"
#include "privometer/rng.hpp"

namespace privometer {

std::string to_string(BaselineMode mode) {
  return mode == BaselineMode::relaxed ? "relaxed" : "complete";
}

BaselineMode baseline_mode_from_string(const std::string& name) {
  if (name == "relaxed") return BaselineMode::relaxed;
  if (name == "complete") return BaselineMode::complete;
  throw ValidationError("unknown mode: '" + name +
                        "' (expected relaxed or complete)");
}

std::string to_string(CoverageKind kind) {
  return kind == CoverageKind::recall ? "recall" : "prediction_rate";
}

std::string ConditionKey::describe() const {
  std::string out = "secret=" + secret + "|known=";
  for (std::size_t i = 0; i < known.size(); ++i) {
    if (i > 0) out += ",";
    out += known[i];
  }
  if (secret_value.has_value()) out += "|value=" + *secret_value;
  if (epsilon.has_value()) out += "|eps=" + format_double(*epsilon);
  return out;
}

void validate_condition(const Dataset& d, ConditionKey& condition) {
  std::sort(condition.known.begin(), condition.known.end());
  condition.known.erase(
      std::unique(condition.known.begin(), condition.known.end()),
      condition.known.end());
  if (condition.known.empty()) {
    throw ValidationError("condition needs at least one known column");
  }
  const std::size_t secret_col = d.column_index(condition.secret);
  for (const std::string& name : condition.known) {
    d.column_index(name);  // raises if absent
    if (name == condition.secret) {
      throw ValidationError("secret column '" + condition.secret +
                            "' cannot also be known");
    }
  }
  const ColumnKind kind = d.column(secret_col).spec.kind;
  if (kind == ColumnKind::continuous) {
    if (condition.secret_value.has_value()) {
      throw ValidationError(
          "secret_value applies only to categorical secrets");
    }
    if (!condition.epsilon.has_value()) {
      throw ValidationError("continuous secret '" + condition.secret +
                            "' needs an epsilon error bound");
    }
    if (!(*condition.epsilon > 0.0)) {
      throw ValidationError("epsilon must be positive");
    }
  } else {
    if (condition.epsilon.has_value()) {
      throw ValidationError("epsilon applies only to continuous secrets");
    }
  }
}

std::string LearnerConfig::describe(LearnerKind resolved) const {
  std::string concrete;
  switch (resolved) {
    case LearnerKind::logistic_l1:
      concrete = "logistic_l1(c=" + format_double(settings.logistic_c) + ")";
      break;
    case LearnerKind::lasso:
      concrete = "lasso(alpha=" + format_double(settings.lasso_alpha) + ")";
      break;
    case LearnerKind::majority:
      concrete = "majority";
      break;
    case LearnerKind::nearest_neighbor:
      concrete = "nearest_neighbor";
      break;
    case LearnerKind::auto_best:
      throw ValidationError("cannot describe an unresolved learner");
  }
  if (kind == LearnerKind::auto_best) return "auto_best->" + concrete;
  return concrete;
}

ScoredSet score_predictions(const ConditionKey& condition,
                            ColumnKind target_kind,
                            const std::vector<Prediction>& predictions,
                            const std::vector<std::string>& truth_labels,
                            const Eigen::VectorXd& truth_values) {
  if (predictions.empty()) {
    throw ValidationError("no predictions to score");
  }
  ScoredSet scored;
  Counts& c = scored.counts;

  if (target_kind == ColumnKind::continuous) {
    if (truth_values.size() != static_cast<Eigen::Index>(predictions.size())) {
      throw ValidationError("predictions and truths disagree on length");
    }
    for (std::size_t i = 0; i < predictions.size(); ++i) {
      if (predictions[i].abstained) {
        ++c.np;
      } else if (correct_continuous(predictions[i].value,
                                    truth_values[static_cast<Eigen::Index>(i)],
                                    *condition.epsilon)) {
        ++c.tp;
      } else {
        ++c.fp;
      }
    }
    scored.precision = precision(c);
    scored.coverage = prediction_rate(c);
    scored.coverage_kind = CoverageKind::prediction_rate;
    return scored;
  }

  if (truth_labels.size() != predictions.size()) {
    throw ValidationError("predictions and truths disagree on length");
  }

  if (condition.secret_value.has_value()) {
    // Cast to the binary task "is it this value": predicting the value is
    // the positive class; another label or an abstention is negative.
    const std::string& v = *condition.secret_value;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
      const bool predicted_v =
          !predictions[i].abstained && predictions[i].label == v;
      const bool truth_v = truth_labels[i] == v;
      if (predicted_v && truth_v) ++c.tp;
      else if (predicted_v) ++c.fp;
      else if (truth_v) ++c.fn;
      else ++c.tn;
    }
    if (c.tp + c.fn == 0) {
      throw UndefinedMeasureError("value '" + v +
                                  "' does not occur among the scored "
                                  "targets; its recall is undefined");
    }
    scored.precision = precision(c);
    scored.coverage = recall(c);
    scored.coverage_kind = CoverageKind::recall;
    return scored;
  }

  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i].abstained) ++c.np;
    else if (predictions[i].label == truth_labels[i]) ++c.tp;
    else ++c.fp;
  }
  scored.precision = precision(c);  // raises when every prediction abstained
  scored.coverage = prediction_rate(c);
  scored.coverage_kind = CoverageKind::prediction_rate;
  return scored;
}

namespace {

// Checks that `targets` carries the condition's columns with the same kinds
// as the analysis set the condition was validated against.
void check_target_columns(const Dataset& analysis_set, const Dataset& targets,
                          const ConditionKey& condition) {
  std::vector<std::string> needed = condition.known;
  needed.push_back(condition.secret);
  for (const std::string& name : needed) {
    const ColumnKind a = analysis_set.column(analysis_set.column_index(name))
                             .spec.kind;
    const ColumnKind b = targets.column(targets.column_index(name)).spec.kind;
    if (a != b) {
      throw ValidationError("column '" + name +
                            "' has different kinds in the analysis set and "
                            "the target set");
    }
  }
}

// Resolves auto_best to a concrete kind. Continuous secrets have one
// regression learner; categorical secrets compare majority (first, so it
// wins ties) against logistic_l1 on a held-out fifth of the analysis rows.
LearnerKind resolve_learner(const EncodedData& train,
                            const LearnerConfig& cfg, std::uint64_t seed) {
  if (cfg.kind != LearnerKind::auto_best) return cfg.kind;
  if (train.target_kind == ColumnKind::continuous) return LearnerKind::lasso;

  const auto n = static_cast<std::uint32_t>(train.x.design.rows());
  if (n < 2) return LearnerKind::majority;  // nothing to hold out

  const std::uint32_t val_count = std::max<std::uint32_t>(1, n / 5);
  Rng rng = Rng(seed).fork("model_select");
  const std::vector<std::uint32_t> val_positions =
      rng.sample_without_replacement(n, val_count);

  std::vector<bool> in_val(n, false);
  for (const std::uint32_t p : val_positions) in_val[p] = true;

  const Eigen::Index d = train.x.design.cols();
  Eigen::MatrixXd x_tr(n - val_count, d);
  Eigen::MatrixXd x_val(val_count, d);
  std::vector<std::int32_t> y_tr;
  std::vector<std::int32_t> y_val;
  y_tr.reserve(n - val_count);
  y_val.reserve(val_count);
  Eigen::Index tr_row = 0;
  Eigen::Index val_row = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (in_val[i]) {
      x_val.row(val_row++) = train.x.design.row(i);
      y_val.push_back(train.y_class[i]);
    } else {
      x_tr.row(tr_row++) = train.x.design.row(i);
      y_tr.push_back(train.y_class[i]);
    }
  }

  const std::vector<LearnerKind> candidates = {LearnerKind::majority,
                                               LearnerKind::logistic_l1};
  const std::size_t winner = best_of(candidates, x_tr, y_tr,
                                     train.class_labels, x_val, y_val,
                                     cfg.settings);
  return candidates[winner];
}

BaselineResult from_prepared(const PreparedBaseline& prepared,
                             double p_threshold, BaselineMode mode) {
  const std::vector<Prediction> preds = predict_with_threshold(
      prepared.model, prepared.targets_x.design, p_threshold);
  const ScoredSet scored =
      score_predictions(prepared.condition, prepared.target_kind, preds,
                        prepared.truth_labels, prepared.truth_values);

  BaselineResult result;
  result.condition = prepared.condition;
  result.mode = mode;
  result.p_base = scored.precision;
  result.coverage_base = scored.coverage;
  result.coverage_kind = scored.coverage_kind;
  result.learner_used = prepared.learner_used;
  result.analysis_descriptor = prepared.analysis_descriptor;
  result.n_targets = prepared.targets_x.row_ids.size();
  result.counts = scored.counts;
  result.converged = prepared.converged;
  result.scored_target_ids = prepared.targets_x.row_ids;
  result.predictions = preds;
  result.truth_labels = prepared.truth_labels;
  result.truth_values = prepared.truth_values;
  return result;
}

}  // namespace

PreparedBaseline prepare_against(const Dataset& analysis_set,
                                 const Dataset& targets,
                                 ConditionKey condition,
                                 const LearnerConfig& learner_cfg,
                                 std::uint64_t seed) {
  validate_condition(analysis_set, condition);
  check_target_columns(analysis_set, targets, condition);
  if (analysis_set.row_count() == 0) {
    throw ValidationError("analysis set is empty");
  }
  if (targets.row_count() == 0) {
    throw ValidationError("target set is empty");
  }

  const EncodedData train =
      encode(analysis_set, analysis_set, condition.known, condition.secret);
  const EncodedData test =
      encode(analysis_set, targets, condition.known, condition.secret);

  const LearnerKind kind = resolve_learner(train, learner_cfg, seed);
  FittedModel model = fit_model(kind, train.x, train, learner_cfg.settings);

  PreparedBaseline prepared;
  prepared.condition = std::move(condition);
  prepared.target_kind = train.target_kind;
  prepared.learner_used = kind;
  prepared.analysis_descriptor = learner_cfg.describe(kind);
  prepared.converged = model.converged();
  prepared.model = std::move(model);
  prepared.targets_x = test.x;
  prepared.truth_labels = test.y_label;
  prepared.truth_values = test.y_value;
  return prepared;
}

BaselineResult measure_prepared(const PreparedBaseline& prepared,
                                double p_threshold) {
  return from_prepared(prepared, p_threshold, BaselineMode::relaxed);
}

BaselineResult baseline_against(const Dataset& analysis_set,
                                const Dataset& targets,
                                const ConditionKey& condition,
                                const LearnerConfig& learner_cfg,
                                std::uint64_t seed) {
  const PreparedBaseline prepared =
      prepare_against(analysis_set, targets, condition, learner_cfg, seed);
  return from_prepared(prepared, learner_cfg.p_threshold,
                       BaselineMode::relaxed);
}

PreparedBaseline prepare_baseline(const Dataset& original,
                                  const ConditionKey& condition,
                                  const LearnerConfig& learner_cfg,
                                  std::uint32_t non_member_count,
                                  std::uint64_t seed) {
  const SplitResult split = split_members(original, non_member_count, seed);
  return prepare_against(split.members, split.non_members, condition,
                         learner_cfg, seed);
}

BaselineResult compute_baseline(const Dataset& original,
                                const ConditionKey& condition,
                                const LearnerConfig& learner_cfg,
                                BaselineMode mode,
                                std::uint32_t non_member_count,
                                std::uint64_t seed) {
  if (mode == BaselineMode::relaxed) {
    const PreparedBaseline prepared = prepare_baseline(
        original, condition, learner_cfg, non_member_count, seed);
    return from_prepared(prepared, learner_cfg.p_threshold,
                         BaselineMode::relaxed);
  }

  // Complete mode. Select the same non-members as relaxed mode would, then
  // refit per individual on everything except that one row.
  ConditionKey cond = condition;
  validate_condition(original, cond);
  const SplitResult split = split_members(original, non_member_count, seed);

  // Resolve an auto_best learner once, on the member split, so the whole
  // measurement reports one analysis rather than hundreds of per-row picks.
  const EncodedData member_train =
      encode(split.members, split.members, cond.known, cond.secret);
  const LearnerKind kind = resolve_learner(member_train, learner_cfg, seed);

  // Ascending-id target list; subsample if over the fit budget.
  std::vector<std::uint32_t> target_ids = split.non_members.row_ids();
  std::sort(target_ids.begin(), target_ids.end());
  if (learner_cfg.complete_budget == 0) {
    throw ValidationError("complete_budget must be >= 1");
  }
  if (target_ids.size() > learner_cfg.complete_budget) {
    Rng rng = Rng(seed).fork("complete_budget");
    const std::vector<std::uint32_t> keep = rng.sample_without_replacement(
        static_cast<std::uint32_t>(target_ids.size()),
        learner_cfg.complete_budget);
    std::vector<std::uint32_t> subsample;
    subsample.reserve(keep.size());
    for (const std::uint32_t k : keep) subsample.push_back(target_ids[k]);
    target_ids = std::move(subsample);
  }

  std::vector<Prediction> all_preds;
  std::vector<std::string> all_truth_labels;
  Eigen::VectorXd all_truth_values(
      static_cast<Eigen::Index>(target_ids.size()));
  all_preds.reserve(target_ids.size());
  bool converged = true;
  ColumnKind target_kind = ColumnKind::categorical;

  for (std::size_t t = 0; t < target_ids.size(); ++t) {
    const std::uint32_t id = target_ids[t];
    const std::optional<std::size_t> pos = original.position_of_row_id(id);
    if (!pos.has_value()) {
      throw ValidationError("target row id vanished from the dataset");
    }
    const auto pos32 = static_cast<std::uint32_t>(*pos);
    const Dataset fit_set = original.drop_rows({pos32});
    const Dataset one_target = original.select_rows({pos32});

    const EncodedData train =
        encode(fit_set, fit_set, cond.known, cond.secret);
    const EncodedData test =
        encode(fit_set, one_target, cond.known, cond.secret);
    target_kind = train.target_kind;

    const FittedModel model =
        fit_model(kind, train.x, train, learner_cfg.settings);
    converged = converged && model.converged();
    const std::vector<Prediction> preds = predict_with_threshold(
        model, test.x.design, learner_cfg.p_threshold);
    all_preds.push_back(preds[0]);
    if (train.target_kind == ColumnKind::categorical) {
      all_truth_labels.push_back(test.y_label[0]);
    } else {
      all_truth_values[static_cast<Eigen::Index>(t)] = test.y_value[0];
    }
  }
  if (target_kind == ColumnKind::categorical) {
    all_truth_values.resize(0);
  }

  const ScoredSet scored = score_predictions(
      cond, target_kind, all_preds, all_truth_labels, all_truth_values);

  BaselineResult result;
  result.condition = cond;
  result.mode = BaselineMode::complete;
  result.p_base = scored.precision;
  result.coverage_base = scored.coverage;
  result.coverage_kind = scored.coverage_kind;
  result.learner_used = kind;
  result.analysis_descriptor = learner_cfg.describe(kind);
  result.n_targets = target_ids.size();
  result.counts = scored.counts;
  result.converged = converged;
  result.scored_target_ids = std::move(target_ids);
  result.predictions = std::move(all_preds);
  result.truth_labels = std::move(all_truth_labels);
  result.truth_values = std::move(all_truth_values);
  return result;
}

std::vector<SweepPoint> threshold_sweep(const PreparedBaseline& prepared,
                                        const std::vector<double>& thresholds) {
  if (prepared.target_kind != ColumnKind::categorical) {
    throw ValidationError("threshold sweeps need a categorical secret");
  }
  if (prepared.condition.secret_value.has_value()) {
    throw ValidationError(
        "threshold sweeps need a plain (not value-narrowed) condition");
  }
  if (thresholds.empty()) {
    throw ValidationError("no thresholds given");
  }

  std::vector<SweepPoint> points;
  points.reserve(thresholds.size());
  for (const double t : thresholds) {
    const std::vector<Prediction> preds =
        predict_with_threshold(prepared.model, prepared.targets_x.design, t);
    Counts c;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      if (preds[i].abstained) ++c.np;
      else if (preds[i].label == prepared.truth_labels[i]) ++c.tp;
      else ++c.fp;
    }
    SweepPoint point;
    point.p_thresh = t;
    point.prediction_rate = prediction_rate(c);
    if (c.tp + c.fp > 0) {
      point.p_base = precision(c);
    }  // else: every target abstained — an explicit no-prediction point
    points.push_back(point);
  }
  return points;
}

ReplicationReport replication_study(
    const Dataset& original, const std::vector<double>& fractions,
    const std::vector<ConditionKey>& conditions,
    const std::vector<LearnerConfig>& learner_cfgs,
    std::uint32_t non_member_count, std::uint64_t seed) {
  if (conditions.empty()) throw ValidationError("no conditions given");
  if (learner_cfgs.empty()) throw ValidationError("no learner configs given");
  for (const double f : fractions) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw ValidationError("fractions must lie in [0, 1]");
    }
  }

  ReplicationReport report;
  report.fractions = fractions;
  if (std::find(report.fractions.begin(), report.fractions.end(), 0.0) ==
      report.fractions.end()) {
    report.fractions.insert(report.fractions.begin(), 0.0);
  }

  // The targets are fixed from the unreplicated split: every fraction scores
  // the same individuals, only the fitting set gains replicas.
  const SplitResult split = split_members(original, non_member_count, seed);
  const Dataset& targets = split.non_members;
  report.n_targets = targets.row_count();

  // Reference pass (fraction 0) first, so deltas have something to refer to.
  std::map<std::pair<std::size_t, std::size_t>, double> reference;
  for (std::size_t ci = 0; ci < conditions.size(); ++ci) {
    for (std::size_t li = 0; li < learner_cfgs.size(); ++li) {
      const BaselineResult res = baseline_against(
          split.members, targets, conditions[ci], learner_cfgs[li], seed);
      reference[{ci, li}] = res.p_base;
    }
  }

  for (const double f : report.fractions) {
    Dataset members_f;
    if (f == 0.0) {
      members_f = split.members;
    } else {
      const Dataset replicated = replicate(original, f, seed);
      std::vector<std::uint32_t> drop;
      drop.reserve(targets.row_count());
      for (const std::uint32_t id : targets.row_ids()) {
        const std::optional<std::size_t> pos =
            replicated.position_of_row_id(id);
        if (!pos.has_value()) {
          throw ValidationError("target row id vanished while replicating");
        }
        drop.push_back(static_cast<std::uint32_t>(*pos));
      }
      std::sort(drop.begin(), drop.end());
      members_f = replicated.drop_rows(drop);
    }

    for (std::size_t ci = 0; ci < conditions.size(); ++ci) {
      for (std::size_t li = 0; li < learner_cfgs.size(); ++li) {
        const BaselineResult res = baseline_against(
            members_f, targets, conditions[ci], learner_cfgs[li], seed);
        ReplicationRow row;
        row.fraction = f;
        row.condition = res.condition;
        row.learner_kind = learner_cfgs[li].kind;
        row.p_base = res.p_base;
        row.coverage_base = res.coverage_base;
        row.coverage_kind = res.coverage_kind;
        row.delta_vs_f0 = res.p_base - reference[{ci, li}];
        row.flagged = std::abs(row.delta_vs_f0) > 0.05;
        row.converged = res.converged;
        report.rows.push_back(row);
      }
    }
  }
  return report;
}

std::vector<NearDuplicate> flag_near_duplicates(const Dataset& d, double tau) {
  if (!(tau > 0.0)) throw ValidationError("tau must be positive");
  std::vector<NearDuplicate> flagged;
  if (d.row_count() < 2) return flagged;

  const Encoder encoder =
      Encoder::fit(d, d.column_names(), std::nullopt);
  const FeatureMatrix x = encoder.transform(d);
  const double scale =
      std::sqrt(static_cast<double>(std::max<std::size_t>(1, x.feature_names.size())));

  const Eigen::Index n = x.design.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double dist =
          (x.design.row(i) - x.design.row(j)).norm() / scale;
      if (dist < tau) {
        NearDuplicate nd;
        nd.id_a = x.row_ids[static_cast<std::size_t>(i)];
        nd.id_b = x.row_ids[static_cast<std::size_t>(j)];
        nd.distance = dist;
        flagged.push_back(nd);
      }
    }
  }
  return flagged;
}

}  // namespace privometer
