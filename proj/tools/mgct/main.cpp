// Copyright 2026 The MGCT Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>

#include <CLI11.hpp>

#include "mgct/commands.hpp"

namespace {

void add_run_options(CLI::App* cmd, mgct::cli::RunArgs& args, std::string& model, bool with_folds) {
  cmd->add_option("--config", args.config, "JSON run config")->check(CLI::ExistingFile);
  cmd->add_option("--model", model, "Ablation preset A-E")->check(CLI::IsMember({"A", "B", "C", "D", "E"}));
  cmd->add_option("--manifest", args.manifest, "Dataset manifest (overrides config)");
  cmd->add_option("--seed", args.seed, "Seed (overrides config and MGCT_SEED)");
  cmd->add_option("--epochs", args.epochs, "Training epochs (overrides config)");
  cmd->add_option("--out", args.out, "Root directory for run directories");
  cmd->add_option("--splits", args.splits, "Reuse a saved splits.json")->check(CLI::ExistingFile);
  if (with_folds) {
    cmd->add_option("--folds", args.folds, "Monte Carlo folds (overrides config)");
    cmd->add_option("--jobs", args.jobs, "Folds trained in parallel");
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace mgct::cli;
  CLI::App app{"Multimodal survival prediction with mutual-guided cross-modality fusion"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic cohort");
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();
  synth_cmd->add_option("--n", synth.n, "Number of samples")->check(CLI::Range(4, 1000000));
  synth_cmd->add_option("--seed", synth.seed, "Seed (default MGCT_SEED or 7)");
  synth_cmd->add_option("--d-in", synth.d_in, "Patch feature width")->check(CLI::Range(1, 100000));
  synth_cmd->add_option("--censor-rate", synth.censor_rate, "Expected censored fraction")
      ->check(CLI::Range(0.0, 0.95));
  synth_cmd->add_flag("--force", synth.force, "Overwrite an existing dataset");

  RunArgs train_args, cv_args, ablate_args;
  std::string train_model, cv_model, ablate_model;
  auto* train_cmd = app.add_subcommand("train", "Train one model on one split");
  add_run_options(train_cmd, train_args, train_model, false);
  auto* cv_cmd = app.add_subcommand("cv", "Monte Carlo cross-validation");
  add_run_options(cv_cmd, cv_args, cv_model, true);
  auto* ablate_cmd = app.add_subcommand("ablate", "Cross-validate ablation presets A-E");
  add_run_options(ablate_cmd, ablate_args, ablate_model, true);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint, write Kaplan-Meier curves and log-rank test");
  eval_cmd->add_option("--checkpoint", eval.checkpoint, "Checkpoint file")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--manifest", eval.manifest, "Dataset manifest")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--categories", eval.categories, "Category map (default: next to the manifest)");
  eval_cmd->add_option("--km-out", eval.km_out, "KM output; writes <stem>_low and <stem>_high")->required();
  eval_cmd->add_option("--splits", eval.splits, "Evaluate only the validation ids of a split")
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--fold", eval.fold, "Fold within --splits");
  eval_cmd->add_option("--horizon", eval.horizon, "AUC horizon in months");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run gradient, simplex and permutation checks");
  verify_cmd->add_option("--inject-fault", verify.inject_fault, "Corrupt a backward rule (tanh-grad-sign)");
  verify_cmd->add_option("--seed", verify.seed, "Seed for random test inputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  auto with_model = [](RunArgs& a, const std::string& m) -> RunArgs& {
    if (!m.empty()) a.model = m[0];
    return a;
  };
  if (*synth_cmd) return cmd_synth(synth, std::cout, std::cerr);
  if (*train_cmd) return cmd_train(with_model(train_args, train_model), std::cout, std::cerr);
  if (*cv_cmd) return cmd_cv(with_model(cv_args, cv_model), std::cout, std::cerr);
  if (*ablate_cmd) return cmd_ablate(with_model(ablate_args, ablate_model), std::cout, std::cerr);
  if (*eval_cmd) return cmd_eval(eval, std::cout, std::cerr);
  if (*verify_cmd) return cmd_verify(verify, std::cout, std::cerr);
  return kExitUsage;
}
