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

#include "mgct/commands.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "mgct/dataio/csv.hpp"
#include "mgct/dataio/dataset.hpp"
#include "mgct/dataio/splits.hpp"
#include "mgct/dataio/synthesize.hpp"
#include "mgct/errors.hpp"
#include "mgct/model/checkpoint.hpp"
#include "mgct/run_config.hpp"
#include "mgct/survival/metrics.hpp"
#include "mgct/train/cross_validation.hpp"
#include "mgct/train/reports.hpp"
#include "mgct/verify/verify_suite.hpp"

namespace mgct::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

ordered_json metric(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

std::string fmt(const std::optional<double>& v) {
  if (!v) return "undefined";
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << *v;
  return os.str();
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// <root>/<command>-<timestamp>-seed<seed>, suffixed until the name is new.
fs::path make_run_dir(const fs::path& root, const std::string& command, std::uint64_t seed) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  localtime_r(&now, &tm);
  std::ostringstream base;
  base << command << "-" << std::put_time(&tm, "%Y%m%d-%H%M%S") << "-seed" << seed;
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw UsageError("cannot create output directory " + root.string() + ": " + ec.message());
  for (int attempt = 0;; ++attempt) {
    const fs::path dir = root / (attempt == 0 ? base.str() : base.str() + "-" + std::to_string(attempt));
    if (fs::create_directory(dir, ec)) return dir;
    if (ec) throw UsageError("cannot create run directory " + dir.string() + ": " + ec.message());
  }
}

struct Run {
  RunConfig config;
  std::uint64_t seed = 0;
  dataio::Dataset dataset;
  std::vector<dataio::FoldSplit> splits;
  fs::path dir;
};

Run prepare(const RunArgs& args, const std::string& command, std::size_t default_folds, std::ostream& out) {
  Run run;
  std::string input_text;
  if (!args.config.empty()) {
    input_text = read_text(args.config);
    run.config = parse_run_config(input_text);
  }
  auto& c = run.config;
  if (args.model) c.model = *args.model;
  if (args.manifest) c.manifest = *args.manifest;
  if (args.epochs) c.train.epochs = *args.epochs;
  if (args.folds) c.folds = *args.folds;
  if (args.jobs) c.jobs = *args.jobs;
  if (args.out) c.output_dir = *args.out;
  if (default_folds > 0) c.folds = default_folds;
  if (c.folds == 0) throw UsageError("folds must be >= 1");
  if (c.jobs == 0) throw UsageError("jobs must be >= 1");
  if (c.manifest.empty()) throw UsageError("no manifest given (config key 'manifest' or --manifest)");
  run.seed = resolve_seed(args.seed, c.seed);
  c.seed = run.seed;
  c.train.seed = run.seed;
  c.train.validate();

  run.dataset = dataio::load_dataset(c.manifest, c.categories);
  if (args.splits) {
    run.splits = dataio::read_splits(*args.splits);
    if (default_folds > 0) run.splits.resize(std::min(run.splits.size(), default_folds));
  } else {
    run.splits = dataio::monte_carlo_splits(run.dataset.ids(), c.folds, c.validation_ratio, run.seed);
  }

  run.dir = make_run_dir(c.output_dir, command, run.seed);
  dataio::write_file_atomic(run.dir / "config.json", dump_run_config(c));
  if (!input_text.empty()) dataio::write_file_atomic(run.dir / "config.input.json", input_text);
  dataio::write_splits(run.dir / "splits.json", run.splits);
  out << "run directory: " << run.dir.string() << "\n";
  out << "resolved config:\n" << dump_run_config(c);
  return run;
}

ordered_json epoch_json(const train::EpochMetrics& m) {
  return {{"epoch", m.epoch}, {"c_index", metric(m.c_index)}, {"auc", metric(m.auc)}, {"loss", m.loss}};
}

ordered_json fold_json(const train::FoldOutcome& f) {
  ordered_json j;
  j["fold"] = f.fold;
  if (!f.result) {
    j["error"] = f.error;
    return j;
  }
  const auto& h = f.result->history;
  j["last_epoch"] = h.empty() ? ordered_json(nullptr) : epoch_json(h.back());
  j["best_epoch"] = f.result->best_epoch ? epoch_json(h[*f.result->best_epoch - 1]) : ordered_json(nullptr);
  j["auc_horizon"] = f.result->auc_horizon;
  j["incidents"] = f.result->incidents;
  return j;
}

void report_fold(const train::FoldOutcome& f, std::ostream& out) {
  if (!f.result) {
    out << "fold " << f.fold << ": FAILED: " << f.error << "\n";
    return;
  }
  const auto& r = *f.result;
  for (const auto& s : r.incidents) out << "warning: " << s << "\n";
  if (r.history.empty()) {
    out << "fold " << f.fold << ": no epochs run\n";
    return;
  }
  const auto& last = r.history.back();
  out << "fold " << f.fold << ": last epoch " << last.epoch << " c_index " << fmt(last.c_index) << " auc "
      << fmt(last.auc) << " loss " << fmt(last.loss) << "\n";
  if (r.best_epoch) {
    const auto& best = r.history[*r.best_epoch - 1];
    out << "fold " << f.fold << ": best epoch " << best.epoch << " c_index " << fmt(best.c_index)
        << " (reported for reference; the saved checkpoint is the last epoch)\n";
  }
}

std::vector<train::EpochMetrics> all_history(const train::CrossValidationResult& r) {
  std::vector<train::EpochMetrics> h;
  for (const auto& f : r.folds) {
    if (f.result) h.insert(h.end(), f.result->history.begin(), f.result->history.end());
  }
  return h;
}

ordered_json summary_json(const train::Summary& s) {
  return {{"mean", metric(s.mean)}, {"std", metric(s.std)}, {"folds", s.folds}};
}

int run_cross_validation(const RunArgs& args, const std::string& command, std::size_t default_folds,
                         std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Run run = prepare(args, command, default_folds, out);
    const auto ablation = model::ablation_preset(run.config.model);
    const auto result = train::cross_validate(run.dataset, run.splits, run.config.train, ablation, run.config.jobs);

    dataio::write_file_atomic(run.dir / "metrics.csv", train::history_csv(all_history(result)));
    ordered_json summary;
    summary["model"] = std::string(1, run.config.model);
    summary["seed"] = run.seed;
    summary["folds"] = ordered_json::array();
    for (const auto& f : result.folds) {
      report_fold(f, out);
      summary["folds"].push_back(fold_json(f));
      if (!f.result) continue;
      auto model = f.result->model;
      const std::string name = default_folds == 1 ? "checkpoint.mgck" : "fold_" + std::to_string(f.fold) + ".mgck";
      model::save_checkpoint(run.dir / name, model, run.seed);
    }
    summary["c_index"] = summary_json(result.c_index);
    summary["auc"] = summary_json(result.auc);
    summary["failed_folds"] = result.failed();
    dataio::write_file_atomic(run.dir / "summary.json", summary.dump(2) + "\n");

    if (default_folds != 1) {
      out << "c_index " << fmt(result.c_index.mean) << " +/- " << fmt(result.c_index.std) << ", auc "
          << fmt(result.auc.mean) << " +/- " << fmt(result.auc.std) << " over " << result.c_index.folds
          << " folds\n";
    }
    if (result.failed() > 0) {
      err << "error: " << result.failed() << " fold(s) failed\n";
      return kExitFailure;
    }
    return kExitOk;
  });
}

std::string stem_with(const fs::path& path, const std::string& suffix, const std::string& default_ext) {
  const std::string ext = path.has_extension() ? path.extension().string() : default_ext;
  return (path.parent_path() / (path.stem().string() + suffix + ext)).string();
}

}  // namespace

int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.out.empty()) throw UsageError("--out is required");
    dataio::SynthConfig sc;
    sc.n = args.n;
    sc.seed = resolve_seed(args.seed, std::nullopt);
    sc.d_in = args.d_in;
    sc.censor_rate = args.censor_rate;
    const fs::path dir = args.out;
    if (fs::exists(dir / "manifest.csv") && !args.force) {
      throw UsageError(dir.string() + " already holds a dataset; pass --force to overwrite");
    }
    const auto ds = dataio::synthesize(sc);
    try {
      dataio::write_dataset(dir, ds);
    } catch (const std::exception& e) {
      throw UsageError("cannot write dataset to " + dir.string() + ": " + e.what());
    }
    std::size_t events = 0, patches = 0;
    double t_sum = 0.0;
    for (const auto& s : ds.samples) {
      events += s.event;
      patches += s.patches.cols();
      t_sum += s.t_months;
    }
    out << "wrote " << ds.samples.size() << " samples to " << dir.string() << "\n"
        << "seed " << sc.seed << ", d_in " << sc.d_in << ", " << ds.categories.size() << " genomic categories\n"
        << "events " << events << ", censored " << ds.samples.size() - events << ", mean time "
        << fmt(t_sum / static_cast<double>(ds.samples.size())) << " months, mean bag size "
        << fmt(static_cast<double>(patches) / static_cast<double>(ds.samples.size())) << "\n";
    return kExitOk;
  });
}

int cmd_train(const RunArgs& args, std::ostream& out, std::ostream& err) {
  return run_cross_validation(args, "train", 1, out, err);
}

int cmd_cv(const RunArgs& args, std::ostream& out, std::ostream& err) {
  return run_cross_validation(args, "cv", 0, out, err);
}

int cmd_ablate(const RunArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Run run = prepare(args, "ablate", 0, out);
    const auto rows = train::run_ablation_matrix(run.dataset, run.splits, run.config.train, run.config.jobs);
    std::size_t failed = 0;
    for (const auto& r : rows) {
      dataio::write_file_atomic(run.dir / ("metrics_" + std::string(1, r.model) + ".csv"),
                                train::history_csv(all_history(r.result)));
      for (const auto& f : r.result.folds) {
        if (!f.result) err << "model " << r.model << " fold " << f.fold << " failed: " << f.error << "\n";
      }
      failed += r.result.failed();
      out << "model " << r.model << " (" << r.parameter_count << " parameters): c_index "
          << fmt(r.result.c_index.mean) << " +/- " << fmt(r.result.c_index.std) << ", auc "
          << fmt(r.result.auc.mean) << " +/- " << fmt(r.result.auc.std) << "\n";
    }
    dataio::write_file_atomic(run.dir / "ablation.csv", train::ablation_csv(rows));
    return failed > 0 ? kExitFailure : kExitOk;
  });
}

int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.checkpoint.empty() || args.manifest.empty() || args.km_out.empty()) {
      throw UsageError("--checkpoint, --manifest and --km-out are required");
    }
    auto [net, seed] = model::load_checkpoint(args.checkpoint);
    const auto ds = dataio::load_dataset(args.manifest, args.categories);
    const auto& mc = net.config();
    if (mc.d_in != ds.feature_width()) {
      throw UsageError("incompatible checkpoint: bag feature width d_in is " + std::to_string(ds.feature_width()) +
                       " in the dataset but " + std::to_string(mc.d_in) + " in the checkpoint");
    }
    const auto lengths = ds.categories.lengths();
    if (mc.category_lengths != lengths) {
      throw UsageError("incompatible checkpoint: genomic categories (count S and per-category gene counts) "
                       "differ between dataset (S = " + std::to_string(lengths.size()) + ") and checkpoint (S = " +
                       std::to_string(mc.category_lengths.size()) + ")");
    }

    std::vector<std::size_t> indices(ds.samples.size());
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
    std::vector<std::size_t> horizon_from = indices;
    if (args.splits) {
      const auto splits = dataio::read_splits(*args.splits);
      if (args.fold >= splits.size()) throw UsageError("--fold " + std::to_string(args.fold) + " not in splits file");
      indices = train::resolve_ids(ds, splits[args.fold].validation_ids);
      horizon_from = train::resolve_ids(ds, splits[args.fold].train_ids);
    }
    if (indices.size() < 2) throw UsageError("need at least two samples to evaluate");
    std::vector<survival::Outcome> ref;
    for (std::size_t i : horizon_from) ref.push_back({ds.samples[i].t_months, ds.samples[i].event});
    const double horizon = args.horizon ? *args.horizon : train::default_auc_horizon(ref);

    const auto ev = train::evaluate(net, ds, indices, horizon);
    const auto strata = survival::stratify(ev.risks);
    auto pick = [&](const std::vector<std::size_t>& group) {
      std::vector<survival::Outcome> o;
      for (std::size_t k : group) o.push_back(ev.outcomes[k]);
      return o;
    };
    const auto low = pick(strata.low);
    const auto high = pick(strata.high);
    if (low.empty() || high.empty()) throw std::runtime_error("all risks are equal; cannot stratify");
    const fs::path km = args.km_out;
    const std::string low_path = stem_with(km, "_low", ".csv");
    const std::string high_path = stem_with(km, "_high", ".csv");
    dataio::write_file_atomic(low_path, train::km_csv(survival::kaplan_meier(low)));
    dataio::write_file_atomic(high_path, train::km_csv(survival::kaplan_meier(high)));

    dataio::CsvTable risks;
    risks.header = {"sample_id", "risk", "t_months", "event", "group"};
    std::vector<std::string> group(indices.size(), "low");
    for (std::size_t k : strata.high) group[k] = "high";
    for (std::size_t k = 0; k < indices.size(); ++k) {
      const auto& s = ds.samples[indices[k]];
      risks.rows.push_back({s.sample_id, dataio::format_double(ev.risks[k]), dataio::format_double(s.t_months),
                            std::to_string(s.event), group[k]});
    }
    dataio::write_file_atomic(stem_with(km, "_risks", ".csv"), dataio::to_csv_string(risks));

    const auto lr = survival::logrank_test(low, high);
    ordered_json report;
    report["samples"] = indices.size();
    report["c_index"] = metric(ev.c_index);
    report["auc"] = metric(ev.auc);
    report["auc_horizon"] = horizon;
    report["low_risk_samples"] = low.size();
    report["high_risk_samples"] = high.size();
    report["logrank_statistic"] = lr ? ordered_json(lr->statistic) : ordered_json(nullptr);
    report["logrank_p_value"] = lr ? ordered_json(lr->p_value) : ordered_json(nullptr);
    report["checkpoint_seed"] = seed;
    dataio::write_file_atomic(km.parent_path() / (km.stem().string() + "_logrank.json"), report.dump(2) + "\n");

    out << "samples " << indices.size() << ", c_index " << fmt(ev.c_index) << ", auc " << fmt(ev.auc)
        << " (horizon " << fmt(horizon) << " months)\n";
    if (lr) {
      out << "log-rank low vs high risk: chi2 " << fmt(lr->statistic) << ", p-value " << lr->p_value << "\n";
    } else {
      out << "log-rank low vs high risk: undefined (no deaths)\n";
    }
    out << "wrote " << low_path << " and " << high_path << "\n";
    return kExitOk;
  });
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    verify::VerifyOptions options;
    options.seed = args.seed;
    if (args.inject_fault == "tanh-grad-sign") {
      options.fault = numkit::GradientFault::kTanhSign;
    } else if (!args.inject_fault.empty()) {
      throw UsageError("unknown fault '" + args.inject_fault + "' (known: tanh-grad-sign)");
    }
    const auto results = verify::run_suite(options);
    std::vector<std::string> failed;
    for (const auto& r : results) {
      out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
      if (!r.passed) failed.push_back(r.name);
    }
    if (failed.empty()) {
      out << "all " << results.size() << " checks passed\n";
      return kExitOk;
    }
    err << "verify: " << failed.size() << " of " << results.size() << " checks failed:";
    for (const auto& f : failed) err << " " << f;
    err << "\n";
    return kExitFailure;
  });
}

}  // namespace mgct::cli
