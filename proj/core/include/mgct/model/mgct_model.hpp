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
#include <vector>

#include "mgct/dataio/dataset.hpp"
#include "mgct/embed/embedders.hpp"
#include "mgct/model/fusion.hpp"

namespace mgct::model {

struct ModelConfig {
  std::size_t d_in = 32;
  std::vector<std::size_t> category_lengths;
  std::size_t snn_hidden = embed::kDefaultSnnHidden;
  double dropout = embed::kDefaultDropout;
  FusionConfig fusion;
  AblationSpec ablation;

  void validate() const;
  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

struct ForwardOptions {
  bool training = false;
  std::uint64_t seed = 0;
  std::uint64_t step = 0;
  FusionTrace* trace = nullptr;
};

/// Complete survival model: patch projection and genomic SNN feed the
/// fusion network, whose embedding feeds the hazard classifier.
class MgctModel {
 public:
  MgctModel(ModelConfig config, std::uint64_t seed);

  const ModelConfig& config() const { return config_; }

  // 1 x bins hazard logits for one sample.
  numkit::Var forward(numkit::ParamBinder& binder, const dataio::BagSample& sample,
                                const ForwardOptions& options = {}) const;
  // Fused 2d x 1 embedding, before the classifier.
  numkit::Var fused_embedding(numkit::ParamBinder& binder, const dataio::BagSample& sample,
                              const ForwardOptions& options = {}) const;

  // Stable order; names are unique.
  numkit::ParamList params();
  std::size_t parameter_count() const;

  embed::PatchProjParams patch_proj;
  embed::SnnParams snn;
  FusionParams fusion;
  HeadParams head;

 private:
  ModelConfig config_;
};

}  // namespace mgct::model
