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

#include "mgct/train/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "mgct/errors.hpp"
#include "mgct/numkit/rng.hpp"
#include "mgct/survival/metrics.hpp"
#include "mgct/train/adam.hpp"

namespace mgct::train {
namespace {

constexpr std::uint64_t kInitStream = 0x494e4954;     // "INIT"
constexpr std::uint64_t kShuffleStream = 0x53485546;  // "SHUF"
constexpr std::uint64_t kLabelStream = 0x4c41424c;    // "LABL"

std::vector<survival::Outcome> outcomes_of(const dataio::Dataset& dataset, const std::vector<std::size_t>& idx) {
  std::vector<survival::Outcome> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back({dataset.samples[i].t_months, dataset.samples[i].event});
  return out;
}

}  // namespace

GradientAccumulator::GradientAccumulator(const numkit::ParamList& params) : params_(params) {
  for (const auto& p : params_) sum_.emplace_back(p.tensor->rows(), p.tensor->cols());
}

void GradientAccumulator::add(const numkit::ParamBinder& binder, const numkit::Gradients& grads) {
  for (std::size_t p = 0; p < params_.size(); ++p) sum_[p].add_scaled(binder.grad_of(*params_[p].tensor, grads), 1.0);
  ++pending_;
}

std::vector<numkit::Tensor> GradientAccumulator::take_mean() {
  if (pending_ == 0) throw ContractError("GradientAccumulator: nothing accumulated");
  std::vector<numkit::Tensor> mean;
  mean.reserve(sum_.size());
  const double inv = 1.0 / static_cast<double>(pending_);
  for (auto& g : sum_) {
    numkit::Tensor m(g.rows(), g.cols());
    m.add_scaled(g, inv);
    mean.push_back(std::move(m));
    g.fill(0.0);
  }
  pending_ = 0;
  return mean;
}

void TrainConfig::validate() const {
  if (accumulation == 0) throw ContractError("train config: accumulation must be >= 1");
  if (!(lr > 0.0) || !std::isfinite(lr)) throw ContractError("train config: lr must be positive");
  if (!(weight_decay >= 0.0) || !std::isfinite(weight_decay)) {
    throw ContractError("train config: weight_decay must be non-negative");
  }
  if (!(loss.alpha >= 0.0 && loss.alpha <= 1.0)) throw ContractError("train config: loss alpha must be in [0, 1]");
  fusion.validate();
}

model::ModelConfig model_config(const dataio::Dataset& dataset, const TrainConfig& config,
                                const model::AblationSpec& ablation) {
  model::ModelConfig mc;
  mc.d_in = dataset.feature_width();
  mc.category_lengths = dataset.categories.lengths();
  mc.snn_hidden = config.snn_hidden;
  mc.dropout = config.dropout;
  mc.fusion = config.fusion;
  mc.ablation = ablation;
  return mc;
}

std::vector<std::size_t> resolve_ids(const dataio::Dataset& dataset, const std::vector<std::string>& ids) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < dataset.samples.size(); ++i) index.emplace(dataset.samples[i].sample_id, i);
  std::vector<std::size_t> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    auto it = index.find(id);
    if (it == index.end()) throw ContractError("split names unknown sample '" + id + "'");
    out.push_back(it->second);
  }
  return out;
}

double default_auc_horizon(std::span<const survival::Outcome> outcomes) {
  std::vector<double> times;
  for (const auto& o : outcomes) {
    if (o.event == 1) times.push_back(o.t);
  }
  if (times.empty()) throw ContractError("AUC horizon: no uncensored training samples");
  return survival::quantile(std::move(times), 0.5);
}

Evaluation evaluate(const model::MgctModel& model, const dataio::Dataset& dataset,
                    const std::vector<std::size_t>& indices, double auc_horizon) {
  Evaluation ev;
  ev.outcomes = outcomes_of(dataset, indices);
  ev.risks.reserve(indices.size());
  for (std::size_t i : indices) {
    numkit::Tape tape;
    numkit::ParamBinder binder(tape);
    numkit::Var logits = model.forward(binder, dataset.samples[i]);
    ev.risks.push_back(survival::predict(logits.value()).risk);
  }
  ev.c_index = survival::concordance_index(ev.risks, ev.outcomes);
  ev.auc = survival::binary_auc(ev.risks, ev.outcomes, auc_horizon);
  return ev;
}

FoldResult train_fold(const dataio::Dataset& dataset, const dataio::FoldSplit& split, const TrainConfig& config,
                      const model::AblationSpec& ablation) {
  config.validate();
  const auto train_idx = resolve_ids(dataset, split.train_ids);
  const auto val_idx = resolve_ids(dataset, split.validation_ids);
  if (train_idx.empty()) throw ContractError("train_fold: empty training set");

  const auto train_outcomes = outcomes_of(dataset, train_idx);
  const auto bins = survival::quantile_bins(train_outcomes, config.fusion.bins);
  const double horizon = default_auc_horizon(train_outcomes);

  const std::uint64_t init_seed = numkit::CounterRng::keyed(config.seed, kInitStream, split.fold).bits(0);
  FoldResult result{.fold = split.fold,
                    .model = model::MgctModel(model_config(dataset, config, ablation), init_seed),
                    .history = {},
                    .best_epoch = std::nullopt,
                    .bins = bins,
                    .auc_horizon = horizon,
                    .incidents = {}};
  auto& net = result.model;
  const numkit::ParamList params = net.params();
  AdamState adam = init_adam(params);
  const AdamOptions adam_options{.lr = config.lr, .weight_decay = config.weight_decay};

  GradientAccumulator acc(params);
  std::uint64_t sample_step = 0;
  std::optional<double> best_c;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::vector<std::size_t> order = train_idx;
    numkit::Rng shuffle_rng(numkit::CounterRng::keyed(config.seed, kShuffleStream, split.fold).bits(epoch));
    shuffle_rng.shuffle(order);

    EpochMetrics m;
    m.epoch = epoch;
    m.fold = split.fold;
    double loss_sum = 0.0;

    auto flush = [&] {
      if (acc.pending() == 0) return;
      if (!adam_step(params, acc.take_mean(), adam, adam_options)) {
        ++m.skipped_steps;
        result.incidents.push_back("fold " + std::to_string(split.fold) + " epoch " + std::to_string(epoch) +
                                   ": non-finite gradient, optimizer step skipped");
      }
    };

    for (std::size_t i : order) {
      const auto& sample = dataset.samples[i];
      numkit::Tape tape;
      numkit::ParamBinder binder(tape);
      const model::ForwardOptions fwd{.training = true, .seed = config.seed, .step = sample_step++, .trace = nullptr};
      numkit::Var logits = net.forward(binder, sample, fwd);
      numkit::Var loss = survival::nll_loss(logits, bins.label({sample.t_months, sample.event}), config.loss);
      loss_sum += loss.value()(0, 0);
      const numkit::Gradients grads = tape.backward(loss);
      acc.add(binder, grads);
      if (acc.pending() == config.accumulation) flush();
    }
    flush();
    m.loss = loss_sum / static_cast<double>(order.size());

    if (!val_idx.empty()) {
      const Evaluation ev = evaluate(net, dataset, val_idx, horizon);
      m.c_index = ev.c_index;
      m.auc = ev.auc;
      if (m.c_index && (!best_c || *m.c_index > *best_c)) {
        best_c = m.c_index;
        result.best_epoch = epoch;
      }
    }
    result.history.push_back(m);
  }
  return result;
}

dataio::Dataset shuffle_labels(const dataio::Dataset& dataset, const std::vector<std::string>& ids,
                               std::uint64_t seed) {
  dataio::Dataset out = dataset;
  const auto idx = resolve_ids(dataset, ids);
  std::vector<std::size_t> perm = idx;
  numkit::Rng rng(numkit::CounterRng::keyed(seed, kLabelStream, 0).bits(0));
  rng.shuffle(perm);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const auto& src = dataset.samples[perm[k]];
    auto& dst = out.samples[idx[k]];
    dst.t_months = src.t_months;
    dst.event = src.event;
    dst.true_risk.reset();
  }
  return out;
}

}  // namespace mgct::train
