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

#include <optional>
#include <string>
#include <vector>

#include "mgct/model/attention.hpp"

namespace mgct::model {

/// Which sub-blocks of the fusion network are active. The named presets
/// A-E enable them cumulatively in the order listed here.
struct AblationSpec {
  bool deep_fusion = true;
  bool mgca = true;
  bool gap = true;
  bool feedforward = true;

  friend bool operator==(const AblationSpec&, const AblationSpec&) = default;
};

// 'A' (plain concatenation) through 'E' (full model).
AblationSpec ablation_preset(char model);
std::string preset_name(const AblationSpec& spec);

struct FusionConfig {
  std::size_t stage1_layers = 1;
  std::size_t stage2_layers = 2;
  std::size_t d = 32;
  std::size_t heads = 1;
  std::size_t d_a = 32;
  std::size_t d_ff = 64;
  std::size_t bins = 4;
  bool residual = false;

  // Throws ContractError when an invariant fails.
  void validate() const;
  friend bool operator==(const FusionConfig&, const FusionConfig&) = default;
};

struct FeedForwardParams {
  numkit::Tensor w1, b1;  // d_ff x d, d_ff x 1
  numkit::Tensor w2, b2;  // d x d_ff, d x 1
  numkit::Tensor w_xi;    // d x d output projection
};

struct MgctLayerParams {
  std::optional<MgcaParams> mgca;
  std::optional<GatedPoolParams> pool;  // stage-final layers only
  std::optional<FeedForwardParams> ff;
};

// One directional stack of layers; only the last one pools.
using LayerStack = std::vector<MgctLayerParams>;

struct FusionParams {
  LayerStack stage1_g_to_h;
  LayerStack stage1_h_to_g;
  LayerStack stage2_f_to_h;  // empty without deep fusion
  LayerStack stage2_h_to_f;
};

struct HeadParams {
  numkit::Tensor w;  // bins x 2d
  numkit::Tensor b;  // bins x 1
};

FusionParams init_fusion(const FusionConfig& config, const AblationSpec& ablation, numkit::Rng& rng);
HeadParams init_head(const FusionConfig& config, numkit::Rng& rng);
void collect(const std::string& prefix, FusionParams& p, numkit::ParamList& out);
void collect(const std::string& prefix, HeadParams& p, numkit::ParamList& out);

/// Attention and pooling weights captured during a forward pass.
struct FusionTrace {
  std::vector<numkit::Tensor> attention;
  std::vector<numkit::Tensor> pool_weights;
};

// Attention (or identity when the layer has no MGCA block), then pooling
// to one token when stage_final, then the feed-forward block when present.
numkit::Var mgct_layer(numkit::ParamBinder& binder, numkit::Var query, numkit::Var context,
                       const MgctLayerParams& params, bool stage_final, bool residual, FusionTrace* trace = nullptr);

/// Two-stage mutual-guided fusion. Stage 1 runs genomic->histology and
/// histology->genomic stacks, whose pooled tokens form a d x 2 token set.
/// Stage 2 repeats with that token set in place of the genomic tokens and
/// the pooled outputs are stacked into a 2d x 1 embedding.
numkit::Var fuse(numkit::ParamBinder& binder, numkit::Var histology, numkit::Var genomic, const FusionParams& params,
                 const FusionConfig& config, FusionTrace* trace = nullptr);

// 1 x bins hazard logits.
numkit::Var classify(numkit::ParamBinder& binder, numkit::Var fused, const HeadParams& params);

}  // namespace mgct::model
