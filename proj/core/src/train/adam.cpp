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

#include "mgct/train/adam.hpp"

#include <cmath>

#include "mgct/errors.hpp"

namespace mgct::train {

AdamState init_adam(const numkit::ParamList& params) {
  AdamState s;
  for (const auto& p : params) {
    s.m.emplace_back(p.tensor->rows(), p.tensor->cols());
    s.v.emplace_back(p.tensor->rows(), p.tensor->cols());
  }
  return s;
}

bool adam_step(const numkit::ParamList& params, std::span<const numkit::Tensor> grads, AdamState& state,
               const AdamOptions& options) {
  if (grads.size() != params.size() || state.m.size() != params.size() || state.v.size() != params.size()) {
    throw ContractError("adam_step: parameter, gradient and state counts differ");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto shape = params[i].tensor->shape();
    if (grads[i].shape() != shape || state.m[i].shape() != shape || state.v[i].shape() != shape) {
      throw ShapeError("adam_step: shape mismatch for " + params[i].name);
    }
  }
  for (const auto& g : grads) {
    if (!g.all_finite()) return false;
  }

  ++state.step;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(options.beta1, t);
  const double c2 = 1.0 - std::pow(options.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto theta = params[i].tensor->data();
    auto g = grads[i].data();
    auto m = state.m[i].data();
    auto v = state.v[i].data();
    for (std::size_t k = 0; k < theta.size(); ++k) {
      const double gk = g[k] + options.weight_decay * theta[k];
      m[k] = options.beta1 * m[k] + (1.0 - options.beta1) * gk;
      v[k] = options.beta2 * v[k] + (1.0 - options.beta2) * gk * gk;
      theta[k] -= options.lr * (m[k] / c1) / (std::sqrt(v[k] / c2) + options.eps);
    }
  }
  return true;
}

}  // namespace mgct::train
