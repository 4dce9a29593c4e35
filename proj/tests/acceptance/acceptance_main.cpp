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
//
// Acceptance checks: one pass/fail line per criterion, exit code = number of
// failures. Usage: privometer_acceptance <cli-binary> <repo-root>.
//
// Criterion 3 needs the public BankChurners CSV (10127 rows, 20 columns),
// which is not shipped with the repository. Point BANKCHURNERS_CSV at the
// file or place it at <repo-root>/data/bankchurners.csv (see data/README.md
// for the one-line preparation recipe); without it that criterion reports an
// honest failure.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "privometer/attack.hpp"
#include "privometer/baseline.hpp"
#include "privometer/csv.hpp"
#include "privometer/dataset.hpp"
#include "privometer/errors.hpp"
#include "privometer/learners.hpp"
#include "privometer/metrics.hpp"
#include "privometer/rng.hpp"
#include "support/synthetic.hpp"

using namespace privometer;
using nlohmann::json;
using privometer::testing::column_labels;
using privometer::testing::make_distinct_rows_dataset;
using privometer::testing::make_parity_dataset;
using privometer::testing::make_uniform_secret_dataset;
using privometer::testing::modal_frequency;
using privometer::testing::TempDir;
using privometer::testing::write_dataset_csv;

namespace {

namespace fs = std::filesystem;

std::string g_cli;
std::string g_repo;

// Thrown by require() to abort a criterion with a reason.
struct CheckFailure {
  std::string reason;
};

void require(bool ok, const std::string& reason) {
  if (!ok) throw CheckFailure{reason};
}

std::string shell_quote(const std::string& s) { return "'" + s + "'"; }

// Runs a shell command, captures stdout, returns the exit code.
int run_command(const std::string& cmd, std::string* out) {
  out->clear();
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return -1;
  std::array<char, 4096> buf;
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) {
    *out += buf.data();
  }
  const int status = pclose(pipe);
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string fmt(double v) { return format_double(v); }

// --- Criterion 1: metric arithmetic ------------------------------------

std::string criterion_1() {
  const double heavy = precision(Counts{1000, 50, 0, 0, 0});
  require(std::abs(heavy - 0.952) <= 0.001,
          "precision(1000 tp, 50 fp) = " + fmt(heavy) + ", want 0.952 +- 0.001");
  const double skewed = precision(Counts{20, 99, 0, 0, 0});
  require(std::abs(skewed - 0.168) <= 0.002,
          "precision(20 tp, 99 fp) = " + fmt(skewed) + ", want 0.168 +- 0.002");
  const double half_low = precision_improvement(0.75, 0.5);
  require(half_low == 0.5,
          "improvement(0.75 over 0.5) = " + fmt(half_low) + ", want exactly 0.5");
  const double half_high = precision_improvement(0.97, 0.94);
  require(half_high == 0.5,
          "improvement(0.97 over 0.94) = " + fmt(half_high) +
              ", want exactly 0.5");
  return "precision " + fmt(heavy) + " / " + fmt(skewed) +
         ", both improvement anchors exactly 0.5";
}

// --- Criterion 2: ROC -> precision/recall via the real CLI --------------

std::string criterion_2() {
  TempDir tmp("accept_roc");
  const std::string cmd = shell_quote(g_cli) +
                          " roc2pr --bundled --skews 1:1,1:30,1:240 --out " +
                          shell_quote(tmp.file("out"));
  std::string stdout_text;
  const auto started = std::chrono::steady_clock::now();
  const int exit_code = run_command(cmd, &stdout_text);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - started)
                           .count();
  require(exit_code == 0, "CLI exited with code " + std::to_string(exit_code));
  require(elapsed < 1000,
          "conversion took " + std::to_string(elapsed) + " ms, budget 1000 ms");

  json report;
  try {
    report = json::parse(stdout_text);
  } catch (const json::parse_error& e) {
    require(false, std::string("CLI stdout is not JSON: ") + e.what());
  }
  const json& tables = report.at("tables");
  require(tables.size() == 2, "expected 2 curves, got " +
                                  std::to_string(tables.size()));

  std::size_t total_rows = 0;
  for (const json& table : tables) {
    const json& rows = table.at("rows");
    require(rows.size() == 21, "curve " + table.at("curve").get<std::string>() +
                                   " has " + std::to_string(rows.size()) +
                                   " rows, want 7 points x 3 skews = 21");
    total_rows += rows.size();

    for (const json& row : rows) {
      const double m = row.at("m").get<double>();
      const double n = row.at("n").get<double>();
      const double fpr = row.at("fpr").get<double>();
      const double tpr = row.at("tpr").get<double>();
      require(row.at("recall").get<double>() == tpr,
              "recall must equal tpr at every operating point");
      const double denom = tpr * m + fpr * n;
      if (denom == 0.0) {
        require(row.at("precision").is_null(),
                "a point with no positive predictions must report null");
        continue;
      }
      const double want = (tpr * m) / denom;
      const double got = row.at("precision").get<double>();
      require(std::abs(got - want) <= 1e-9,
              "precision " + fmt(got) + " differs from recomputed " +
                  fmt(want) + " at fpr=" + fmt(fpr) + " n=" + fmt(n));
    }

    // More imbalance can only hurt precision; strictly so once both rates
    // are positive. Rows come skew-major: 7 points per skew, skews in the
    // order given on the command line (n = 1, 30, 240).
    for (int point = 0; point < 7; ++point) {
      for (int skew = 1; skew < 3; ++skew) {
        const json& prev = rows[7 * (skew - 1) + point];
        const json& cur = rows[7 * skew + point];
        if (prev.at("precision").is_null() || cur.at("precision").is_null()) {
          continue;
        }
        const double p_prev = prev.at("precision").get<double>();
        const double p_cur = cur.at("precision").get<double>();
        require(p_cur <= p_prev + 1e-12,
                "precision rose from " + fmt(p_prev) + " to " + fmt(p_cur) +
                    " as the skew grew");
        if (cur.at("fpr").get<double>() > 0.0 &&
            cur.at("tpr").get<double>() > 0.0) {
          require(p_cur < p_prev, "precision must drop strictly at fpr>0, "
                                  "tpr>0 when the skew grows");
        }
      }
    }
  }
  require(total_rows == 42,
          "expected 42 rows across both curves, got " +
              std::to_string(total_rows));
  return "42 rows recomputed to 1e-9, skew ordering holds (" +
         std::to_string(elapsed) + " ms)";
}

// --- Criterion 3: full-scale protocol on BankChurners -------------------

std::string bankchurners_path() {
  if (const char* env = std::getenv("BANKCHURNERS_CSV")) return env;
  return (fs::path(g_repo) / "data" / "bankchurners.csv").string();
}

std::string criterion_3() {
  const std::string csv_path = bankchurners_path();
  require(fs::exists(csv_path),
          "BankChurners CSV not found at '" + csv_path +
              "': set BANKCHURNERS_CSV or add data/bankchurners.csv "
              "(recipe in data/README.md)");

  const std::vector<ColumnSpec> schema = load_schema(
      (fs::path(g_repo) / "configs" / "bankchurners_schema.json").string());
  const Dataset d = load_csv(csv_path, schema);
  require(d.row_count() == 10127, "expected 10127 rows, got " +
                                      std::to_string(d.row_count()));
  require(d.column_count() == 20, "expected 20 columns, got " +
                                      std::to_string(d.column_count()));

  const std::uint32_t non_members = 3039;  // leaves 7088 members
  const std::uint64_t seed = 97;
  LearnerConfig cfg;  // auto-selected model, c = 0.01, alpha = 0.1
  const double epsilon = 0.05;

  const std::vector<std::string> names = d.column_names();
  std::vector<std::string> pii_columns;
  for (const std::string& name : names) {
    if (d.column(d.column_index(name)).spec.pii) pii_columns.push_back(name);
  }
  require(pii_columns.size() == 5,
          "schema should mark 5 PII columns, got " +
              std::to_string(pii_columns.size()));

  auto condition_for = [&](const std::string& secret, bool pii_only) {
    ConditionKey key;
    key.secret = secret;
    for (const std::string& name : pii_only ? pii_columns : names) {
      if (name != secret) key.known.push_back(name);
    }
    if (d.column(d.column_index(secret)).spec.kind == ColumnKind::continuous) {
      key.epsilon = epsilon;
    }
    return key;
  };

  std::size_t categorical_checked = 0;
  bool sweep_hit_certainty = false;
  for (const std::string& secret : names) {
    const ConditionKey all_key = condition_for(secret, false);
    const ConditionKey pii_key = condition_for(secret, true);
    const BaselineResult with_all = compute_baseline(
        d, all_key, cfg, BaselineMode::relaxed, non_members, seed);
    const BaselineResult with_pii = compute_baseline(
        d, pii_key, cfg, BaselineMode::relaxed, non_members, seed);

    // (b) Knowing everything must not lose more than 0.05 to knowing only
    // the PII columns.
    require(with_all.p_base >= with_pii.p_base - 0.05,
            "secret '" + secret + "': all-attributes baseline " +
                fmt(with_all.p_base) + " fell more than 0.05 below PII-only " +
                fmt(with_pii.p_base));

    const ColumnKind kind = d.column(d.column_index(secret)).spec.kind;
    if (kind == ColumnKind::categorical) {
      ++categorical_checked;
      // (a) Model selection keeps the always-guess-the-mode floor.
      for (const BaselineResult* base : {&with_all, &with_pii}) {
        const double modal = modal_frequency(base->truth_labels);
        require(base->p_base + 1e-12 >= modal,
                "secret '" + secret + "': baseline " + fmt(base->p_base) +
                    " fell below the scored modal frequency " + fmt(modal));
      }
      // (c) Somewhere on the trade-off curve the baseline should reach
      // certainty while still predicting someone.
      if (!sweep_hit_certainty) {
        const PreparedBaseline prepared =
            prepare_baseline(d, all_key, cfg, non_members, seed);
        const std::vector<SweepPoint> sweep = threshold_sweep(
            prepared,
            {0.0, 0.5, 0.9, 0.95, 0.99, 0.995, 0.999, 0.9999, 1.0});
        for (const SweepPoint& point : sweep) {
          if (point.p_base.has_value() && *point.p_base == 1.0 &&
              point.prediction_rate > 0.0) {
            sweep_hit_certainty = true;
            break;
          }
        }
      }
    }
  }
  require(categorical_checked == 6,
          "expected 6 categorical secrets, got " +
              std::to_string(categorical_checked));
  require(sweep_hit_certainty,
          "no categorical secret reached precision 1.0 at a positive "
          "prediction rate anywhere on the threshold sweep");
  return "20 secrets x 2 knowledge sets: modal floor, knowledge ordering, "
         "and a certainty point all hold";
}

// --- Criterion 4: synthetic oracles --------------------------------------

std::string criterion_4() {
  ConditionKey parity_key;
  parity_key.known = {"group", "noise"};
  parity_key.secret = "secret";
  const Dataset parity = make_parity_dataset(2000, 43);
  LearnerConfig strong;
  strong.settings.logistic_c = 10.0;  // small synthetic: light penalty

  const BaselineResult relaxed = compute_baseline(
      parity, parity_key, strong, BaselineMode::relaxed, 600, 11);
  require(relaxed.p_base >= 0.95,
          "fully determined secret recovered at only " + fmt(relaxed.p_base));

  LearnerConfig budgeted = strong;
  budgeted.complete_budget = 150;
  const BaselineResult complete = compute_baseline(
      parity, parity_key, budgeted, BaselineMode::complete, 600, 11);
  require(std::abs(complete.p_base - relaxed.p_base) <= 0.05,
          "leave-one-out " + fmt(complete.p_base) +
              " disagrees with single-fit " + fmt(relaxed.p_base) +
              " by more than 0.05");

  ConditionKey uniform_key;
  uniform_key.known = {"shape", "size"};
  uniform_key.secret = "secret";
  const Dataset uniform = make_uniform_secret_dataset(2000, 44);
  const double modal = modal_frequency(column_labels(uniform, "secret"));
  const BaselineResult unlearnable = compute_baseline(
      uniform, uniform_key, LearnerConfig{}, BaselineMode::relaxed, 600, 12);
  require(std::abs(unlearnable.p_base - modal) <= 0.03,
          "independent secret baseline " + fmt(unlearnable.p_base) +
              " strayed more than 0.03 from the modal frequency " +
              fmt(modal));
  return "determined secret " + fmt(relaxed.p_base) + " (loo " +
         fmt(complete.p_base) + "), independent secret " +
         fmt(unlearnable.p_base) + " vs modal " + fmt(modal);
}

// --- Criterion 5: coverage-matched comparison ----------------------------

std::string criterion_5() {
  const Dataset parity = make_parity_dataset(1200, 54);
  ConditionKey key;
  key.known = {"group", "noise"};
  key.secret = "secret";
  LearnerConfig majority;
  majority.kind = LearnerKind::majority;
  const std::size_t secret_col = parity.column_index("secret");

  // Oracle fixture: 400 targets, 300 answered — all correctly.
  AttackSubmission oracle;
  oracle.condition = key;
  oracle.attack_name = "oracle";
  for (std::uint32_t id = 0; id < 400; ++id) {
    oracle.target_ids.push_back(id);
    Prediction p;
    if (id < 300) {
      p.label = parity.categorical_label(id, secret_col);
      p.confidence = 1.0;
    } else {
      p.abstained = true;
    }
    oracle.predictions.push_back(p);
  }
  const ComparisonReport oracle_report = compare(oracle, parity, majority, 7);
  require(oracle_report.p_base.has_value() && *oracle_report.p_base < 1.0,
          "the oracle fixture needs an imperfect baseline");
  require(oracle_report.pi.has_value() && *oracle_report.pi == 1.0,
          "an all-correct attack must score improvement exactly 1.0");
  require(oracle_report.c_atk == 300.0 / 400.0,
          "shared coverage must be 300/400, got " + fmt(oracle_report.c_atk));
  require(oracle_report.predicted_ids_sorted ==
              oracle_report.baseline_scored_ids,
          "the baseline must be scored on exactly the predicted rows");

  // Echo fixture: resubmit the baseline model's own predictions.
  std::vector<std::uint32_t> predicted;
  for (std::uint32_t id = 100; id < 400; ++id) predicted.push_back(id);
  const BaselineResult base =
      comparison_baseline(parity, key, predicted, majority, 7);
  require(base.p_base < 1.0, "the echo fixture needs an imperfect baseline");
  AttackSubmission echo;
  echo.condition = key;
  echo.attack_name = "echo";
  echo.target_ids = base.scored_target_ids;
  for (const Prediction& p : base.predictions) {
    Prediction copy;
    copy.label = p.label;
    copy.confidence = 1.0;
    echo.predictions.push_back(copy);
  }
  const ComparisonReport echo_report = compare(echo, parity, majority, 7);
  require(echo_report.pi.has_value() && std::abs(*echo_report.pi) <= 1e-12,
          "echoing the baseline must score improvement 0 to 1e-12, got " +
              fmt(echo_report.pi.value_or(-1.0)));
  require(echo_report.c_atk == 1.0,
          "the echo answers every target it lists");
  require(echo_report.predicted_ids_sorted == echo_report.baseline_scored_ids,
          "the baseline must be scored on exactly the predicted rows");
  return "oracle improvement 1.0, echo improvement " +
         fmt(*echo_report.pi) + ", coverage and row sets match";
}

// --- Criterion 6: replication sensitivity --------------------------------

std::string criterion_6() {
  ConditionKey distinct_key;
  distinct_key.known = {"x1", "x2"};
  distinct_key.secret = "secret";
  LearnerConfig nearest;
  nearest.kind = LearnerKind::nearest_neighbor;
  const Dataset distinct = make_distinct_rows_dataset(1200, 56);
  const ReplicationReport memorizer = replication_study(
      distinct, {0.0, 1.0}, {distinct_key}, {nearest}, 300, 25);
  require(memorizer.rows.size() == 2, "expected one row per fraction");
  const ReplicationRow& copied = memorizer.rows[1];
  require(copied.fraction == 1.0, "second row should be fraction 1.0");
  require(copied.p_base >= 0.99,
          "a memorizing analysis fed replicas reached only " +
              fmt(copied.p_base));

  ConditionKey uniform_key;
  uniform_key.known = {"shape", "size"};
  uniform_key.secret = "secret";
  LearnerConfig logistic;
  logistic.kind = LearnerKind::logistic_l1;
  logistic.settings.logistic_c = 1.0;
  const Dataset uniform = make_uniform_secret_dataset(2000, 57);
  const ReplicationReport regularized = replication_study(
      uniform, {0.0, 1.0}, {uniform_key}, {logistic}, 500, 26);
  const ReplicationRow& shifted = regularized.rows[1];
  require(std::abs(shifted.delta_vs_f0) <= 0.05,
          "the regularized analysis moved by " + fmt(shifted.delta_vs_f0) +
              " under full replication (budget 0.05)");
  return "memorizer at replicas " + fmt(copied.p_base) +
         ", regularized shift " + fmt(shifted.delta_vs_f0);
}

// --- Criterion 7: solver correctness --------------------------------------

Eigen::MatrixXd hadamard(int order) {
  Eigen::MatrixXd h(1, 1);
  h(0, 0) = 1.0;
  while (h.rows() < order) {
    const Eigen::Index k = h.rows();
    Eigen::MatrixXd next(2 * k, 2 * k);
    next.topLeftCorner(k, k) = h;
    next.topRightCorner(k, k) = h;
    next.bottomLeftCorner(k, k) = h;
    next.bottomRightCorner(k, k) = -h;
    h = next;
  }
  return h;
}

std::string criterion_7() {
  // Lasso against the closed form on an orthonormal design.
  const Eigen::MatrixXd h = hadamard(8);
  const int n = 8, d = 4;
  Eigen::MatrixXd x(n, d);
  for (int j = 0; j < d; ++j) x.col(j) = h.col(j + 1);
  Rng rng(24);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = rng.unit_real() * 4.0 - 2.0;
  const double alpha = 0.15;
  OptimizerOptions tight;
  tight.cd_tol = 1e-12;
  const ContinuousModel lasso = fit_lasso(x, y, alpha, tight);
  require(lasso.converged, "coordinate descent failed to converge");
  double worst_coef = std::abs(lasso.intercept - y.mean());
  for (int j = 0; j < d; ++j) {
    const double rho = x.col(j).dot(y) / static_cast<double>(n);
    worst_coef = std::max(
        worst_coef, std::abs(lasso.weights[j] - soft_threshold(rho, alpha)));
  }
  require(worst_coef <= 1e-6, "closed-form gap " + fmt(worst_coef) +
                                  " exceeds 1e-6 per coefficient");

  // Analytic logistic gradient against central finite differences.
  Rng grad_rng(21);
  const int gn = 40, gd = 5, gk = 3;
  Eigen::MatrixXd gx(gn, gd);
  for (int i = 0; i < gn; ++i) {
    for (int j = 0; j < gd; ++j) gx(i, j) = grad_rng.unit_real() * 2.0 - 1.0;
  }
  std::vector<std::int32_t> gy(gn);
  for (int i = 0; i < gn; ++i) {
    gy[i] = static_cast<std::int32_t>(grad_rng.below(gk));
  }
  Eigen::MatrixXd w(gk, gd);
  for (int c = 0; c < gk; ++c) {
    for (int j = 0; j < gd; ++j) {
      const double mag = 0.5 + grad_rng.unit_real();  // stay off |w| = 0
      w(c, j) = grad_rng.bernoulli(0.5) ? mag : -mag;
    }
  }
  Eigen::VectorXd b(gk);
  for (int c = 0; c < gk; ++c) b[c] = grad_rng.unit_real() - 0.5;

  const double strength = 0.1;
  const double step = 1e-6;
  Eigen::MatrixXd grad_w;
  Eigen::VectorXd grad_b;
  logistic_gradient(gx, gy, w, b, &grad_w, &grad_b);
  double worst_rel = 0.0;
  for (int c = 0; c < gk; ++c) {
    for (int j = 0; j < gd; ++j) {
      Eigen::MatrixXd hi = w, lo = w;
      hi(c, j) += step;
      lo(c, j) -= step;
      const double fd = (logistic_objective(gx, gy, hi, b, strength) -
                         logistic_objective(gx, gy, lo, b, strength)) /
                        (2.0 * step);
      const double analytic =
          grad_w(c, j) + strength * (w(c, j) > 0.0 ? 1.0 : -1.0);
      worst_rel = std::max(worst_rel, std::abs(fd - analytic) /
                                          std::max(1.0, std::abs(fd)));
    }
    Eigen::VectorXd hi = b, lo = b;
    hi[c] += step;
    lo[c] -= step;
    const double fd = (logistic_objective(gx, gy, w, hi, strength) -
                       logistic_objective(gx, gy, w, lo, strength)) /
                      (2.0 * step);
    worst_rel = std::max(worst_rel, std::abs(fd - grad_b[c]) /
                                        std::max(1.0, std::abs(fd)));
  }
  require(worst_rel <= 1e-5, "gradient relative error " + fmt(worst_rel) +
                                 " exceeds 1e-5");

  // Stationarity residual at convergence on a correlated design.
  Rng kkt_rng(25);
  const int kn = 60, kd = 6;
  Eigen::MatrixXd kx(kn, kd);
  for (int i = 0; i < kn; ++i) {
    for (int j = 0; j < kd; ++j) kx(i, j) = kkt_rng.unit_real() * 2.0 - 1.0;
  }
  kx.col(1) = 0.7 * kx.col(0) + 0.3 * kx.col(1);
  Eigen::VectorXd w_true = Eigen::VectorXd::Zero(kd);
  w_true[0] = 1.5;
  w_true[2] = -0.8;
  Eigen::VectorXd ky = kx * w_true;
  for (int i = 0; i < kn; ++i) ky[i] += 0.3 + 0.05 * (kkt_rng.unit_real() - 0.5);
  const ContinuousModel correlated = fit_lasso(kx, ky, 0.05, tight);
  require(correlated.converged, "coordinate descent failed to converge");
  const double kkt = lasso_kkt_residual(kx, ky, correlated.weights,
                                        correlated.intercept, 0.05);
  require(kkt <= 1e-5, "stationarity residual " + fmt(kkt) + " exceeds 1e-5");

  return "closed-form gap " + fmt(worst_coef) + ", gradient error " +
         fmt(worst_rel) + ", stationarity residual " + fmt(kkt);
}

// --- Criterion 8: byte-identical reruns through the CLI ------------------

std::string criterion_8() {
  TempDir tmp("accept_determinism");
  write_dataset_csv(make_uniform_secret_dataset(80, 91), tmp.file("data.csv"));
  const json config = {
      {"dataset", "data.csv"},
      {"seed", 5},
      {"non_member_count", 20},
      {"conditions",
       json::array({json{{"secret", "secret"},
                         {"known", json::array({"shape", "size"})}}})},
      {"learner", {{"kind", "majority"}}},
      {"out", tmp.file("out")},
  };
  write_text_file(tmp.file("run.json"), config.dump(2));
  const std::string cmd =
      shell_quote(g_cli) + " baseline --config " + shell_quote(tmp.file("run.json"));

  std::string first_stdout, second_stdout;
  require(run_command(cmd, &first_stdout) == 0, "first run failed");
  require(run_command(cmd, &second_stdout) == 0, "second run failed");
  require(first_stdout == second_stdout,
          "the two runs printed different reports");

  // Exactly one family directory, holding run-001 and run-002.
  std::vector<fs::path> families;
  for (const auto& entry : fs::directory_iterator(tmp.file("out"))) {
    families.push_back(entry.path());
  }
  require(families.size() == 1,
          "identical configs must share one run family, found " +
              std::to_string(families.size()));
  const fs::path run1 = families[0] / "run-001";
  const fs::path run2 = families[0] / "run-002";
  require(fs::exists(run1) && fs::exists(run2),
          "expected run-001 and run-002 under " + families[0].string());
  for (const char* name : {"resolved_config.json", "baseline_report.json",
                           "baseline_summary.csv"}) {
    require(read_text_file((run1 / name).string()) ==
                read_text_file((run2 / name).string()),
            std::string(name) + " differs between identical runs");
  }
  require(fs::exists(run1 / "run_meta.json"),
          "run_meta.json (the timestamp file) is missing");
  return "two CLI runs byte-identical: stdout and all persisted files "
         "except the timestamp file";
}

struct Criterion {
  int number;
  long budget_ms;  // 0 = no wall-clock budget
  std::function<std::string()> run;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: privometer_acceptance <cli-binary> <repo-root>\n";
    return 64;
  }
  g_cli = argv[1];
  g_repo = argv[2];

  const std::vector<Criterion> criteria = {
      {1, 1000, criterion_1},     {2, 0, criterion_2},
      {3, 300000, criterion_3},   {4, 60000, criterion_4},
      {5, 60000, criterion_5},    {6, 120000, criterion_6},
      {7, 60000, criterion_7},    {8, 0, criterion_8},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto started = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = true;
    try {
      detail = criterion.run();
    } catch (const CheckFailure& f) {
      pass = false;
      detail = f.reason;
    } catch (const Error& e) {
      pass = false;
      detail = std::string("unexpected error: ") + e.what();
    } catch (const std::exception& e) {
      pass = false;
      detail = std::string("unexpected exception: ") + e.what();
    }
    const long elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - started)
            .count();
    if (pass && criterion.budget_ms > 0 && elapsed > criterion.budget_ms) {
      pass = false;
      detail = "passed its checks but took " + std::to_string(elapsed) +
               " ms against a budget of " +
               std::to_string(criterion.budget_ms) + " ms";
    }
    if (!pass) ++failures;
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion-"
              << criterion.number << ": " << detail << " [" << elapsed
              << " ms]" << std::endl;
  }
  return failures;
}
