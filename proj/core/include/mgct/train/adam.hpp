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
#include <span>
#include <vector>

#include "mgct/numkit/params.hpp"

namespace mgct::train {

struct AdamOptions {
  double lr = 2e-4;
  double weight_decay = 1e-5;  // added to the gradient as weight_decay * theta
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::vector<numkit::Tensor> m;
  std::vector<numkit::Tensor> v;
  std::uint64_t step = 0;
};

AdamState init_adam(const numkit::ParamList& params);

// One bias-corrected Adam update. Returns false and leaves parameters and
// state untouched when any gradient entry is non-finite.
bool adam_step(const numkit::ParamList& params, std::span<const numkit::Tensor> grads, AdamState& state,
               const AdamOptions& options);

}  // namespace mgct::train
