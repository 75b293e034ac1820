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
#include <optional>
#include <span>
#include <vector>

#include "mgct/survival/labels.hpp"

namespace mgct::survival {

struct ConcordanceCounts {
  std::uint64_t comparable = 0;
  std::uint64_t concordant = 0;
  std::uint64_t tied = 0;

  // nullopt when no pair is comparable.
  std::optional<double> index() const;
};

// A pair (i, j) is comparable when i died and t_i < t_j; it is concordant
// when risk_i > risk_j and counts one half on a risk tie.
ConcordanceCounts concordance_counts(std::span<const double> risks, std::span<const Outcome> outcomes);
std::optional<double> concordance_index(std::span<const double> risks, std::span<const Outcome> outcomes);

struct KmPoint {
  double time = 0.0;
  double survival = 1.0;
  std::size_t at_risk = 0;
  std::size_t events = 0;
  std::size_t censored = 0;
};

// Product-limit estimate. The first point is (0, 1); then one point per
// distinct observed time with the survival just after it.
std::vector<KmPoint> kaplan_meier(std::span<const Outcome> outcomes);

struct LogRankResult {
  double statistic = 0.0;  // chi-square, 1 dof
  double p_value = 1.0;
  double observed_a = 0.0;
  double expected_a = 0.0;
  double variance = 0.0;
};

// Two-group log-rank test. nullopt when no deaths occur (or the variance
// vanishes), since the statistic is then undefined.
std::optional<LogRankResult> logrank_test(std::span<const Outcome> group_a, std::span<const Outcome> group_b);

struct Strata {
  std::vector<std::size_t> low;
  std::vector<std::size_t> high;
};

// Median split of risks; risks equal to the median go to the low group.
Strata stratify(std::span<const double> risks);

// Fixed-horizon AUC: deaths at or before the horizon are positives, any
// sample followed past it is a negative, and samples censored before it
// are dropped. nullopt when either class is empty.
std::optional<double> binary_auc(std::span<const double> risks, std::span<const Outcome> outcomes, double horizon);

}  // namespace mgct::survival
