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

#include <vector>

#include "mgct/numkit/tape.hpp"
#include "mgct/survival/labels.hpp"

namespace mgct::survival {

inline constexpr double kHazardFloor = 1e-7;

struct SurvivalPrediction {
  std::vector<double> hazards;   // per-bin conditional hazard
  std::vector<double> survival;  // cumulative product of (1 - hazard)
  double risk = 0.0;             // -sum(survival); higher is worse
};

SurvivalPrediction predict(const numkit::Tensor& logits);
SurvivalPrediction from_hazards(std::vector<double> hazards);

struct NllOptions {
  // Extra weight on uncensored terms: censored terms are scaled by (1 - alpha).
  double alpha = 0.0;
  double floor = kHazardFloor;
};

// Discrete-time negative log-likelihood. An uncensored sample in bin k
// contributes -log S(k-1) - log h(k); a censored one -log S(k).
double nll_loss(std::span<const double> hazards, const SurvivalLabel& label, const NllOptions& options = {});

// Same loss recorded on the tape from 1 x bins logits.
numkit::Var nll_loss(numkit::Var logits, const SurvivalLabel& label, const NllOptions& options = {});

}  // namespace mgct::survival
