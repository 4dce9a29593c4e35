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

// Command-line entry point. Every subcommand reads a JSON run configuration
// (--config), optionally overridden by --seed and --out, runs one batch
// command from the core library, writes an append-only run directory, and
// echoes the report to stdout as JSON (default) or CSV.
//
// Exit codes: 0 success; 1 bad usage, bad config, or failed submissions;
// 2 a measurement could not be completed.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "privometer/commands.hpp"
#include "privometer/errors.hpp"
#include "privometer/roc.hpp"

namespace {

using privometer::CommandResult;
using privometer::RunConfig;

struct CommonOpts {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  CLI::Option* config_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* out_opt = nullptr;
};

void add_common(CLI::App* sub, CommonOpts* opts) {
  opts->config_opt = sub->add_option(
      "--config", opts->config_path,
      "run configuration (JSON); a report file from a previous run works "
      "too");
  opts->seed_opt = sub->add_option(
      "--seed", opts->seed, "seed override; a run must be seeded here or in "
      "the config");
  opts->out_opt =
      sub->add_option("--out", opts->out, "output directory root");
  sub->add_option("--format", opts->format, "stdout format (default json)")
      ->check(CLI::IsMember({"json", "csv"}));
}

RunConfig build_config(const CommonOpts& opts) {
  RunConfig cfg;
  if (opts.config_opt->count() > 0) {
    cfg = privometer::load_run_config(opts.config_path);
  }
  if (opts.seed_opt->count() > 0) {
    cfg.seed = opts.seed;
    cfg.seed_set = true;
  }
  if (opts.out_opt->count() > 0) cfg.out = opts.out;
  return cfg;
}

void emit(const CommandResult& result, const std::string& format) {
  std::cerr << "wrote " << result.run_dir << "\n";
  if (format == "csv") {
    for (const privometer::CsvFile& file : result.csv_files) {
      if (result.csv_files.size() > 1) {
        std::cout << "# file: " << file.name << "\n";
      }
      std::cout << file.text;
    }
  } else {
    std::cout << result.report.dump(2) << "\n";
  }
}

int fail(const char* type, const std::exception& e, int code) {
  nlohmann::json err;
  err["error"] = {{"type", type}, {"message", e.what()}};
  std::cerr << err.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "privometer — measures what a dataset release already reveals, so "
      "attack results can be reported as improvement over that baseline"};
  app.require_subcommand(1);

  CLI::App* baseline = app.add_subcommand(
      "baseline", "fit allowed inferences and measure their precision");
  CommonOpts baseline_opts;
  add_common(baseline, &baseline_opts);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "re-threshold baselines across confidence cutoffs");
  CommonOpts sweep_opts;
  add_common(sweep, &sweep_opts);

  CLI::App* compare = app.add_subcommand(
      "compare", "score attack submissions against the matched baseline");
  CommonOpts compare_opts;
  add_common(compare, &compare_opts);
  std::vector<std::string> attack_paths;
  compare
      ->add_option("--attack", attack_paths,
                   "attack submission CSV (target_id,prediction); repeat "
                   "for several")
      ->required();

  CLI::App* replicate = app.add_subcommand(
      "replicate", "re-measure baselines with replicated rows in the fit");
  CommonOpts replicate_opts;
  add_common(replicate, &replicate_opts);

  CLI::App* roc2pr = app.add_subcommand(
      "roc2pr", "re-report ROC points as precision/recall under base-rate "
                "skews");
  CommonOpts roc2pr_opts;
  add_common(roc2pr, &roc2pr_opts);
  std::vector<std::string> roc_paths;
  std::vector<std::string> skew_args;
  bool bundled = false;
  roc2pr->add_option("--roc", roc_paths,
                     "ROC curve CSV (fpr,tpr); repeat for several");
  roc2pr->add_flag("--bundled", bundled,
                   "include the two bundled literature curves");
  roc2pr
      ->add_option("--skews", skew_args,
                   "base-rate skews as m:n (e.g. 1:1,1:30,1:240)")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    CommandResult result;
    std::string format = "json";
    if (app.got_subcommand(baseline)) {
      result = privometer::cmd_baseline(build_config(baseline_opts));
      format = baseline_opts.format;
    } else if (app.got_subcommand(sweep)) {
      result = privometer::cmd_sweep(build_config(sweep_opts));
      format = sweep_opts.format;
    } else if (app.got_subcommand(compare)) {
      result =
          privometer::cmd_compare(build_config(compare_opts), attack_paths);
      format = compare_opts.format;
    } else if (app.got_subcommand(replicate)) {
      result = privometer::cmd_replication(build_config(replicate_opts));
      format = replicate_opts.format;
    } else {
      RunConfig cfg = build_config(roc2pr_opts);
      privometer::RocInputs inputs;
      inputs.roc_paths = roc_paths;
      inputs.bundled = bundled;
      if (!skew_args.empty()) {
        cfg.skews.clear();
        for (const std::string& s : skew_args) {
          cfg.skews.push_back(privometer::parse_skew(s));
        }
      }
      result = privometer::cmd_roc2pr(cfg, inputs);
      format = roc2pr_opts.format;
    }
    emit(result, format);
    return result.exit_code;
  } catch (const privometer::ValidationError& e) {
    return fail("validation", e, 1);
  } catch (const privometer::IoError& e) {
    return fail("io", e, 1);
  } catch (const privometer::UndefinedMeasureError& e) {
    return fail("undefined_measure", e, 2);
  } catch (const privometer::SaturatedBaselineError& e) {
    return fail("saturated_baseline", e, 2);
  } catch (const privometer::Error& e) {
    return fail("error", e, 2);
  } catch (const std::exception& e) {
    return fail("internal", e, 2);
  }
}
