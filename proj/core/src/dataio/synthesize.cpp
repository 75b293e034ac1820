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

#include "mgct/dataio/synthesize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mgct/errors.hpp"
#include "mgct/numkit/rng.hpp"

namespace mgct::dataio {
namespace {

constexpr std::size_t kBackgroundClusters = 3;

std::vector<double> random_direction(numkit::Rng& rng, std::size_t n, double norm) {
  std::vector<double> v(n);
  double ss = 0.0;
  for (auto& x : v) {
    x = rng.normal();
    ss += x * x;
  }
  const double k = norm / std::sqrt(ss);
  for (auto& x : v) x *= k;
  return v;
}

void check_config(const SynthConfig& c) {
  auto fail = [](const std::string& msg) { throw ContractError("synthesize: " + msg); };
  if (c.n < 4) fail("n must be at least 4");
  if (c.d_in == 0) fail("d_in must be positive");
  if (c.categories == 0 || c.genes_per_category == 0) fail("need at least one category and one gene per category");
  if (c.min_patches == 0 || c.min_patches > c.max_patches) fail("patch count range is empty");
  if (!(c.signal_fraction > 0.0 && c.signal_fraction <= 1.0)) fail("signal_fraction must be in (0, 1]");
  if (c.signal_category >= c.categories) fail("signal_category out of range");
  if (!(c.patch_noise >= 0.0) || !(c.gene_noise >= 0.0) || !(c.cluster_spread >= 0.0)) {
    fail("noise scales must be non-negative");
  }
  if (!(c.base_hazard > 0.0)) fail("base_hazard must be positive");
  if (!(c.censor_rate >= 0.0 && c.censor_rate < 1.0)) fail("censor_rate must be in [0, 1)");
  const double risk_var = c.histology_weight * c.histology_weight + c.genomic_weight * c.genomic_weight +
                          c.interaction_weight * c.interaction_weight;
  if (!(risk_var > 0.0)) fail("risk model has zero variance");
  if (c.signal_scale == 0.0 && c.histology_weight != 0.0) fail("histology factor has zero variance in the bags");
}

// Rate of the exponential censoring distribution whose expected censored
// fraction over the cohort equals `target`.
double solve_censor_rate(const std::vector<double>& hazards, double target) {
  if (target == 0.0) return 0.0;
  auto fraction = [&](double mu) {
    double f = 0.0;
    for (double h : hazards) f += mu / (mu + h);
    return f / static_cast<double>(hazards.size());
  };
  double lo = std::log(1e-12), hi = std::log(1e12);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (fraction(std::exp(mid)) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

std::string sample_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "S%04zu", i + 1);
  return buf;
}

}  // namespace

Dataset synthesize(const SynthConfig& config) {
  check_config(config);
  numkit::Rng rng(config.seed);
  const std::size_t d = config.d_in;

  std::vector<std::vector<double>> centroids;
  for (std::size_t k = 0; k < kBackgroundClusters; ++k) centroids.push_back(random_direction(rng, d, config.cluster_spread));
  const auto signal_centroid = random_direction(rng, d, config.cluster_spread);
  const auto signal_axis = random_direction(rng, d, 1.0);
  const auto gene_loading =
      random_direction(rng, config.genes_per_category, std::sqrt(static_cast<double>(config.genes_per_category)));

  std::vector<CategoryMap::Category> cats;
  for (std::size_t c = 0; c < config.categories; ++c) {
    CategoryMap::Category cat;
    cat.name = config.categories == default_category_names().size() ? default_category_names()[c]
                                                                    : "category_" + std::to_string(c + 1);
    for (std::size_t g = 0; g < config.genes_per_category; ++g) {
      cat.genes.push_back("c" + std::to_string(c + 1) + "_g" + std::to_string(g + 1));
    }
    cats.push_back(std::move(cat));
  }

  Dataset ds;
  ds.categories = CategoryMap(std::move(cats));
  std::vector<double> event_times;
  std::vector<double> hazards;
  for (std::size_t i = 0; i < config.n; ++i) {
    const double h = rng.normal();
    const double g = rng.normal();
    const std::size_t n_patches =
        config.min_patches + static_cast<std::size_t>(rng.index(config.max_patches - config.min_patches + 1));
    const std::size_t n_signal = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(config.signal_fraction * static_cast<double>(n_patches))));

    BagSample s;
    s.sample_id = sample_name(i);
    s.patches = numkit::Tensor(d, n_patches);
    // Signal patches are scattered through the bag so no position is special.
    std::vector<std::size_t> order(n_patches);
    for (std::size_t k = 0; k < n_patches; ++k) order[k] = k;
    rng.shuffle(order);
    for (std::size_t k = 0; k < n_patches; ++k) {
      const bool is_signal = k < n_signal;
      const auto& centre = is_signal ? signal_centroid : centroids[rng.index(kBackgroundClusters)];
      const double offset = is_signal ? config.signal_scale * h : 0.0;
      for (std::size_t r = 0; r < d; ++r) {
        const double v = centre[r] + offset * signal_axis[r] + config.patch_noise * rng.normal();
        s.patches(r, order[k]) = static_cast<double>(static_cast<float>(v));
      }
    }

    for (std::size_t c = 0; c < config.categories; ++c) {
      std::vector<double> genes(config.genes_per_category);
      for (std::size_t j = 0; j < genes.size(); ++j) {
        genes[j] = c == config.signal_category ? g * gene_loading[j] + config.gene_noise * rng.normal() : rng.normal();
      }
      s.genomic.push_back(std::move(genes));
    }

    const double risk = config.histology_weight * h + config.genomic_weight * g + config.interaction_weight * h * g;
    const double rate = config.base_hazard * std::exp(risk);
    s.true_risk = risk;
    event_times.push_back(rng.exponential(rate));
    hazards.push_back(rate);
    ds.samples.push_back(std::move(s));
  }

  const double censor_rate = solve_censor_rate(hazards, config.censor_rate);
  for (std::size_t i = 0; i < config.n; ++i) {
    auto& s = ds.samples[i];
    const double t = event_times[i];
    if (censor_rate > 0.0) {
      const double c = rng.exponential(censor_rate);
      s.t_months = std::min(t, c);
      s.event = t <= c ? 1 : 0;
    } else {
      s.t_months = t;
      s.event = 1;
    }
  }
  validate(ds);
  return ds;
}

}  // namespace mgct::dataio
