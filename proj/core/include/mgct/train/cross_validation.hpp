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

#include <optional>
#include <string>
#include <vector>

#include "mgct/train/trainer.hpp"

namespace mgct::train {

inline constexpr double kDefaultValidationRatio = 0.2;

struct Summary {
  std::optional<double> mean;
  std::optional<double> std;  // population standard deviation
  std::size_t folds = 0;      // folds contributing a defined value
};

Summary summarize(const std::vector<std::optional<double>>& values);

struct FoldOutcome {
  std::size_t fold = 0;
  std::optional<FoldResult> result;
  std::string error;  // set when the fold failed
};

struct CrossValidationResult {
  std::vector<FoldOutcome> folds;
  Summary c_index;  // last-epoch validation values
  Summary auc;
  std::size_t failed() const;
};

// Runs every split, up to `jobs` at a time. Results keep split order.
CrossValidationResult cross_validate(const dataio::Dataset& dataset, const std::vector<dataio::FoldSplit>& splits,
                                     const TrainConfig& config, const model::AblationSpec& ablation,
                                     std::size_t jobs = 1);
CrossValidationResult cross_validate(const dataio::Dataset& dataset, std::size_t k, const TrainConfig& config,
                                     const model::AblationSpec& ablation, std::size_t jobs = 1);

struct AblationRow {
  char model = 'A';
  model::AblationSpec spec;
  std::size_t parameter_count = 0;
  CrossValidationResult result;
};

// Cross-validates presets A-E on the same splits.
std::vector<AblationRow> run_ablation_matrix(const dataio::Dataset& dataset,
                                             const std::vector<dataio::FoldSplit>& splits,
                                             const TrainConfig& config, std::size_t jobs = 1);

}  // namespace mgct::train
