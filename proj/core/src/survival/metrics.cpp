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

#include "mgct/survival/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "mgct/errors.hpp"
#include "mgct/survival/stats.hpp"

namespace mgct::survival {
namespace {

void require_same_length(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw ShapeError(std::string(op) + ": " + std::to_string(a) + " risks for " + std::to_string(b) + " outcomes");
  }
}

}  // namespace

std::optional<double> ConcordanceCounts::index() const {
  if (comparable == 0) return std::nullopt;
  return static_cast<double>(2 * concordant + tied) / static_cast<double>(2 * comparable);
}

ConcordanceCounts concordance_counts(std::span<const double> risks, std::span<const Outcome> outcomes) {
  require_same_length(risks.size(), outcomes.size(), "concordance_counts");
  std::vector<std::size_t> order(outcomes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return outcomes[a].t < outcomes[b].t; });

  ConcordanceCounts counts;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t i = order[pos];
    if (outcomes[i].event != 1) continue;
    // Skip partners sharing t_i; they are not strictly later.
    std::size_t next = pos + 1;
    while (next < order.size() && outcomes[order[next]].t == outcomes[i].t) ++next;
    for (std::size_t q = next; q < order.size(); ++q) {
      const std::size_t j = order[q];
      ++counts.comparable;
      if (risks[i] > risks[j]) {
        ++counts.concordant;
      } else if (risks[i] == risks[j]) {
        ++counts.tied;
      }
    }
  }
  return counts;
}

std::optional<double> concordance_index(std::span<const double> risks, std::span<const Outcome> outcomes) {
  return concordance_counts(risks, outcomes).index();
}

std::vector<KmPoint> kaplan_meier(std::span<const Outcome> outcomes) {
  if (outcomes.empty()) throw ContractError("kaplan_meier: no samples");
  std::vector<Outcome> sorted(outcomes.begin(), outcomes.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const Outcome& a, const Outcome& b) { return a.t < b.t; });

  std::vector<KmPoint> curve;
  curve.push_back({0.0, 1.0, sorted.size(), 0, 0});
  double survival = 1.0;
  std::size_t at_risk = sorted.size();
  for (std::size_t i = 0; i < sorted.size();) {
    const double t = sorted[i].t;
    std::size_t deaths = 0, censored = 0;
    for (; i < sorted.size() && sorted[i].t == t; ++i) {
      (sorted[i].event == 1 ? deaths : censored) += 1;
    }
    if (deaths > 0) {
      survival *= 1.0 - static_cast<double>(deaths) / static_cast<double>(at_risk);
    }
    curve.push_back({t, survival, at_risk, deaths, censored});
    at_risk -= deaths + censored;
  }
  return curve;
}

std::optional<LogRankResult> logrank_test(std::span<const Outcome> group_a, std::span<const Outcome> group_b) {
  if (group_a.empty() || group_b.empty()) throw ContractError("logrank_test: both groups must be non-empty");
  struct Tagged {
    double t;
    int event;
    bool in_a;
  };
  std::vector<Tagged> all;
  for (const auto& o : group_a) all.push_back({o.t, o.event, true});
  for (const auto& o : group_b) all.push_back({o.t, o.event, false});
  std::stable_sort(all.begin(), all.end(), [](const Tagged& a, const Tagged& b) { return a.t < b.t; });

  double n_a = static_cast<double>(group_a.size());
  double n = static_cast<double>(all.size());
  LogRankResult r;
  std::size_t total_deaths = 0;
  for (std::size_t i = 0; i < all.size();) {
    const double t = all[i].t;
    double d = 0.0, d_a = 0.0, leaving = 0.0, leaving_a = 0.0;
    for (; i < all.size() && all[i].t == t; ++i) {
      leaving += 1.0;
      if (all[i].in_a) leaving_a += 1.0;
      if (all[i].event == 1) {
        d += 1.0;
        if (all[i].in_a) d_a += 1.0;
      }
    }
    if (d > 0.0) {
      total_deaths += static_cast<std::size_t>(d);
      r.observed_a += d_a;
      r.expected_a += d * n_a / n;
      if (n > 1.0) r.variance += d * (n_a / n) * (1.0 - n_a / n) * (n - d) / (n - 1.0);
    }
    n -= leaving;
    n_a -= leaving_a;
  }
  if (total_deaths == 0 || !(r.variance > 0.0)) return std::nullopt;
  const double diff = r.observed_a - r.expected_a;
  r.statistic = diff * diff / r.variance;
  r.p_value = chi_square_sf(r.statistic, 1.0);
  return r;
}

Strata stratify(std::span<const double> risks) {
  if (risks.size() < 2) throw ContractError("stratify: need at least two samples");
  std::vector<double> sorted(risks.begin(), risks.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size() / 2;
  const double median = sorted.size() % 2 == 1 ? sorted[m] : 0.5 * (sorted[m - 1] + sorted[m]);
  Strata s;
  for (std::size_t i = 0; i < risks.size(); ++i) (risks[i] <= median ? s.low : s.high).push_back(i);
  return s;
}

std::optional<double> binary_auc(std::span<const double> risks, std::span<const Outcome> outcomes, double horizon) {
  require_same_length(risks.size(), outcomes.size(), "binary_auc");
  std::vector<double> kept;
  std::vector<bool> positive;
  for (std::size_t i = 0; i < risks.size(); ++i) {
    const auto& o = outcomes[i];
    if (o.t <= horizon) {
      if (o.event != 1) continue;
      positive.push_back(true);
    } else {
      positive.push_back(false);
    }
    kept.push_back(risks[i]);
  }
  const auto n_pos = static_cast<double>(std::count(positive.begin(), positive.end(), true));
  const double n_neg = static_cast<double>(positive.size()) - n_pos;
  if (n_pos == 0.0 || n_neg == 0.0) return std::nullopt;
  // Mann-Whitney U from mid-ranks.
  const auto r = ranks(kept);
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (positive[i]) rank_sum += r[i];
  }
  const double u = rank_sum - n_pos * (n_pos + 1.0) / 2.0;
  return u / (n_pos * n_neg);
}

}  // namespace mgct::survival
