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

#include <string>
#include <vector>

#include "mgct/numkit/rng.hpp"
#include "mgct/numkit/tensor.hpp"

namespace mgct::numkit {

struct NamedParam {
  std::string name;
  Tensor* tensor;
};

using ParamList = std::vector<NamedParam>;

// Uniform(-a, a) with a = sqrt(6 / (fan_in + fan_out)); fan_in = cols.
Tensor xavier_uniform(std::size_t rows, std::size_t cols, Rng& rng);

std::size_t count_entries(const ParamList& params);

}  // namespace mgct::numkit
