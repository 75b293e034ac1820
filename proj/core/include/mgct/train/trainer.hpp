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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mgct/dataio/dataset.hpp"
#include "mgct/dataio/splits.hpp"
#include "mgct/model/mgct_model.hpp"
#include "mgct/survival/labels.hpp"
#include "mgct/survival/loss.hpp"

namespace mgct::train {

struct TrainConfig {
  std::size_t epochs = 20;
  double lr = 2e-4;
  double weight_decay = 1e-5;
  std::size_t accumulation = 32;
  std::uint64_t seed = 0;
  std::size_t snn_hidden = embed::kDefaultSnnHidden;
  double dropout = embed::kDefaultDropout;
  model::FusionConfig fusion;
  survival::NllOptions loss;

  void validate() const;
};

model::ModelConfig model_config(const dataio::Dataset& dataset, const TrainConfig& config,
                                const model::AblationSpec& ablation);

// Sums per-sample gradients for a fixed parameter list and hands out their
// mean, one optimizer step's worth at a time.
class GradientAccumulator {
 public:
  explicit GradientAccumulator(const numkit::ParamList& params);

  void add(const numkit::ParamBinder& binder, const numkit::Gradients& grads);
  std::size_t pending() const { return pending_; }
  // Mean over the pending samples; leaves the accumulator empty.
  std::vector<numkit::Tensor> take_mean();

 private:
  numkit::ParamList params_;
  std::vector<numkit::Tensor> sum_;
  std::size_t pending_ = 0;
};

struct EpochMetrics {
  std::size_t epoch = 0;  // 1-based
  std::size_t fold = 0;
  std::optional<double> c_index;  // nullopt when no validation pair is comparable
  std::optional<double> auc;
  double loss = 0.0;  // mean training loss over the epoch
  std::size_t skipped_steps = 0;
};

struct Evaluation {
  std::vector<double> risks;
  std::vector<survival::Outcome> outcomes;
  std::optional<double> c_index;
  std::optional<double> auc;
};

// Eval-mode risks for the samples at `indices`.
Evaluation evaluate(const model::MgctModel& model, const dataio::Dataset& dataset,
                    const std::vector<std::size_t>& indices, double auc_horizon);

struct FoldResult {
  std::size_t fold = 0;
  model::MgctModel model;  // after the last epoch
  std::vector<EpochMetrics> history;
  std::optional<std::size_t> best_epoch;  // highest validation C-index
  survival::BinEdges bins;
  double auc_horizon = 0.0;
  std::vector<std::string> incidents;
};

/// Trains one fold from scratch. Time bins and the AUC horizon come from the
/// training samples only; validation labels are read only for metrics.
FoldResult train_fold(const dataio::Dataset& dataset, const dataio::FoldSplit& split, const TrainConfig& config,
                      const model::AblationSpec& ablation);

// Indices of `ids` in the dataset; throws ContractError for unknown ids.
std::vector<std::size_t> resolve_ids(const dataio::Dataset& dataset, const std::vector<std::string>& ids);

// Median of the uncensored times, the default AUC horizon.
double default_auc_horizon(std::span<const survival::Outcome> outcomes);

// Copy of the dataset whose (time, event) labels are permuted among `ids`.
dataio::Dataset shuffle_labels(const dataio::Dataset& dataset, const std::vector<std::string>& ids,
                               std::uint64_t seed);

}  // namespace mgct::train
