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

#include "mgct/survival/loss.hpp"

#include <algorithm>
#include <cmath>

#include "mgct/errors.hpp"
#include "mgct/numkit/ops.hpp"

namespace mgct::survival {

namespace nk = numkit;

SurvivalPrediction from_hazards(std::vector<double> hazards) {
  SurvivalPrediction p;
  p.hazards = std::move(hazards);
  double s = 1.0;
  for (double h : p.hazards) {
    s *= 1.0 - h;
    p.survival.push_back(s);
    p.risk -= s;
  }
  return p;
}

SurvivalPrediction predict(const numkit::Tensor& logits) {
  std::vector<double> hazards;
  for (double z : logits.data()) hazards.push_back(z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z)));
  return from_hazards(std::move(hazards));
}

double nll_loss(std::span<const double> hazards, const SurvivalLabel& label, const NllOptions& options) {
  if (label.bin >= hazards.size()) {
    throw ContractError("nll_loss: bin " + std::to_string(label.bin) + " outside " + std::to_string(hazards.size()) +
                        " hazards");
  }
  auto safe_log = [&](double v) { return std::log(std::max(v, options.floor)); };
  double s_prev = 1.0;  // S(bin - 1)
  for (std::size_t k = 0; k < label.bin; ++k) s_prev *= 1.0 - hazards[k];
  if (label.event == 1) return -safe_log(s_prev) - safe_log(hazards[label.bin]);
  const double s_bin = s_prev * (1.0 - hazards[label.bin]);
  return -(1.0 - options.alpha) * safe_log(s_bin);
}

nk::Var nll_loss(nk::Var logits, const SurvivalLabel& label, const NllOptions& options) {
  if (logits.rows() != 1 || label.bin >= logits.cols()) {
    throw ShapeError("nll_loss: logits " + nk::to_string(logits.shape()) + " incompatible with bin " +
                     std::to_string(label.bin));
  }
  nk::Var hazards = nk::activation(logits, nk::Activation::kSigmoid);
  nk::Var survival = nk::cumprod_cols(nk::affine(hazards, -1.0, 1.0));
  if (label.event == 1) {
    nk::Var log_h = nk::log_clamped(nk::element(hazards, 0, label.bin), options.floor);
    if (label.bin == 0) return nk::scale(log_h, -1.0);
    nk::Var log_s = nk::log_clamped(nk::element(survival, 0, label.bin - 1), options.floor);
    return nk::scale(nk::add(log_s, log_h), -1.0);
  }
  nk::Var log_s = nk::log_clamped(nk::element(survival, 0, label.bin), options.floor);
  return nk::scale(log_s, -(1.0 - options.alpha));
}

}  // namespace mgct::survival
