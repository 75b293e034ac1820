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

#include <span>
#include <vector>

namespace mgct::survival {

/// Observed follow-up: time in months and whether death was observed.
struct Outcome {
  double t = 0.0;
  int event = 0;
};

struct SurvivalLabel {
  double t = 0.0;
  int event = 0;
  std::size_t bin = 0;
};

/// Discrete time bins cut at quantiles of uncensored times. Bin k covers
/// [edge_{k-1}, edge_k) with the outer edges at 0 and +inf.
class BinEdges {
 public:
  BinEdges() = default;
  explicit BinEdges(std::vector<double> inner) : inner_(std::move(inner)) {}

  std::size_t bins() const { return inner_.size() + 1; }
  const std::vector<double>& inner() const { return inner_; }
  std::size_t assign(double t) const;
  SurvivalLabel label(const Outcome& o) const { return {o.t, o.event, assign(o.t)}; }

 private:
  std::vector<double> inner_;
};

// Linear-interpolated quantiles (k/bins, k = 1..bins-1) of the uncensored
// times. Throws ContractError when there are no uncensored times.
BinEdges quantile_bins(std::span<const Outcome> outcomes, std::size_t bins);

// Linear-interpolated quantile of unsorted values, q in [0, 1].
double quantile(std::vector<double> values, double q);

}  // namespace mgct::survival
