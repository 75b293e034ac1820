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

#include "mgct/survival/labels.hpp"

#include <algorithm>
#include <cmath>

#include "mgct/errors.hpp"

namespace mgct::survival {

std::size_t BinEdges::assign(double t) const {
  return static_cast<std::size_t>(std::upper_bound(inner_.begin(), inner_.end(), t) - inner_.begin());
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw ContractError("quantile of an empty set");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

BinEdges quantile_bins(std::span<const Outcome> outcomes, std::size_t bins) {
  if (bins < 2) throw ContractError("quantile_bins: need at least two bins");
  std::vector<double> times;
  for (const auto& o : outcomes) {
    if (o.event == 1) times.push_back(o.t);
  }
  if (times.empty()) throw ContractError("quantile_bins: no uncensored times to cut bins from");
  std::vector<double> inner;
  for (std::size_t k = 1; k < bins; ++k) {
    inner.push_back(quantile(times, static_cast<double>(k) / static_cast<double>(bins)));
  }
  return BinEdges(std::move(inner));
}

}  // namespace mgct::survival
