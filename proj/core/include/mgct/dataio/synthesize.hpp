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

#include "mgct/dataio/dataset.hpp"

namespace mgct::dataio {

/// Generator for cross-modal survival cohorts with a known risk.
///
/// Each bag mixes background patches with a "signal" cluster whose offset
/// along a hidden direction is the histology factor h. One genomic category
/// carries the genomic factor g along a hidden gene loading; the others are
/// noise. Risk is r = histology_weight*h + genomic_weight*g +
/// interaction_weight*h*g, survival time is exponential with rate
/// base_hazard*exp(r), and censoring times are independent exponentials
/// whose rate is solved so the expected censored fraction equals
/// censor_rate.
struct SynthConfig {
  std::size_t n = 200;
  std::size_t d_in = 32;
  std::size_t categories = 6;
  std::size_t genes_per_category = 8;
  std::size_t min_patches = 16;
  std::size_t max_patches = 48;
  double signal_fraction = 0.25;
  double signal_scale = 2.0;  // offset of signal patches per unit of h
  double patch_noise = 0.5;
  double cluster_spread = 3.0;  // scale of cluster centroids
  double gene_noise = 0.5;
  std::size_t signal_category = 0;
  double histology_weight = 2.0;
  double genomic_weight = 2.0;
  double interaction_weight = 1.0;
  double base_hazard = 1.0 / 24.0;  // per month
  double censor_rate = 0.3;
  std::uint64_t seed = 7;
};

// Throws ContractError on n < 4, a non-positive scale, or a risk model with
// zero variance.
Dataset synthesize(const SynthConfig& config);

}  // namespace mgct::dataio
