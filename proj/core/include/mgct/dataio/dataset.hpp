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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mgct/dataio/genomics.hpp"
#include "mgct/numkit/tensor.hpp"

namespace mgct::dataio {

/// One patient: a bag of patch embeddings, grouped genomic vectors, and a
/// right-censored survival label.
struct BagSample {
  std::string sample_id;
  numkit::Tensor patches;  // d_in x N
  std::vector<std::vector<double>> genomic;  // one vector per category
  double t_months = 0.0;
  int event = 0;  // 1 = death observed, 0 = censored
  std::optional<double> true_risk;  // synthetic data only
};

struct Dataset {
  CategoryMap categories;
  std::vector<BagSample> samples;

  std::size_t feature_width() const { return samples.empty() ? 0 : samples.front().patches.rows(); }
  std::vector<std::string> ids() const;
};

// Checks every BagSample invariant; throws IngestError naming the sample.
void validate(const Dataset& dataset);

// Loads every bag and gene table named by the manifest. When `categories`
// is empty, `categories.json` next to the manifest is used. Nothing is
// returned unless every row loads.
Dataset load_dataset(const std::filesystem::path& manifest,
                     const std::filesystem::path& categories = {});

// Writes manifest.csv, categories.json, bags/<id>.mgcb, genomics/<id>.csv,
// and ground_truth.csv when true risks are present.
void write_dataset(const std::filesystem::path& dir, const Dataset& dataset);

}  // namespace mgct::dataio
