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

#include "mgct/train/cross_validation.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "mgct/errors.hpp"

namespace mgct::train {

Summary summarize(const std::vector<std::optional<double>>& values) {
  Summary s;
  double sum = 0.0;
  for (const auto& v : values) {
    if (!v) continue;
    sum += *v;
    ++s.folds;
  }
  if (s.folds == 0) return s;
  const double mean = sum / static_cast<double>(s.folds);
  double sq = 0.0;
  for (const auto& v : values) {
    if (v) sq += (*v - mean) * (*v - mean);
  }
  s.mean = mean;
  s.std = std::sqrt(sq / static_cast<double>(s.folds));
  return s;
}

std::size_t CrossValidationResult::failed() const {
  std::size_t n = 0;
  for (const auto& f : folds) n += f.result ? 0 : 1;
  return n;
}

CrossValidationResult cross_validate(const dataio::Dataset& dataset, const std::vector<dataio::FoldSplit>& splits,
                                     const TrainConfig& config, const model::AblationSpec& ablation,
                                     std::size_t jobs) {
  if (splits.empty()) throw ContractError("cross_validate: need at least one fold");
  CrossValidationResult out;
  out.folds.resize(splits.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < splits.size(); i = next++) {
      auto& slot = out.folds[i];
      slot.fold = splits[i].fold;
      try {
        slot.result = train_fold(dataset, splits[i], config, ablation);
      } catch (const std::exception& e) {
        slot.error = e.what();
      }
    }
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(jobs, splits.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  std::vector<std::optional<double>> c, a;
  for (const auto& f : out.folds) {
    if (!f.result || f.result->history.empty()) continue;
    c.push_back(f.result->history.back().c_index);
    a.push_back(f.result->history.back().auc);
  }
  out.c_index = summarize(c);
  out.auc = summarize(a);
  return out;
}

CrossValidationResult cross_validate(const dataio::Dataset& dataset, std::size_t k, const TrainConfig& config,
                                     const model::AblationSpec& ablation, std::size_t jobs) {
  if (k == 0) throw ContractError("cross_validate: k must be >= 1");
  const auto splits = dataio::monte_carlo_splits(dataset.ids(), k, kDefaultValidationRatio, config.seed);
  return cross_validate(dataset, splits, config, ablation, jobs);
}

std::vector<AblationRow> run_ablation_matrix(const dataio::Dataset& dataset,
                                             const std::vector<dataio::FoldSplit>& splits,
                                             const TrainConfig& config, std::size_t jobs) {
  std::vector<AblationRow> rows;
  for (char m : {'A', 'B', 'C', 'D', 'E'}) {
    AblationRow row;
    row.model = m;
    row.spec = model::ablation_preset(m);
    row.parameter_count = model::MgctModel(model_config(dataset, config, row.spec), config.seed).parameter_count();
    row.result = cross_validate(dataset, splits, config, row.spec, jobs);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mgct::train
