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

#include <filesystem>
#include <string>
#include <vector>

#include "mgct/survival/metrics.hpp"
#include "mgct/train/cross_validation.hpp"

namespace mgct::train {

inline constexpr const char* kHistoryHeader = "epoch,fold,c_index,auc,loss";

// One row per (epoch, fold), sorted by epoch then fold. Undefined metrics
// are written as empty fields.
std::string history_csv(const std::vector<EpochMetrics>& history);
std::string ablation_csv(const std::vector<AblationRow>& rows);
std::string km_csv(const std::vector<survival::KmPoint>& curve);

}  // namespace mgct::train
