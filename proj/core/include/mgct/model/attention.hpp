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

#include "mgct/numkit/ops.hpp"
#include "mgct/numkit/params.hpp"
#include "mgct/numkit/tape.hpp"

namespace mgct::model {

/// Cross-modality attention weights. Queries come from one modality,
/// keys and values from the other.
struct MgcaParams {
  numkit::Tensor w_q;  // d x d
  numkit::Tensor w_k;  // d x d
  numkit::Tensor w_v;  // d x d
  std::size_t heads = 1;
};

/// Gated attention pooling: score_i = w (tanh(V r_i) * sigm(U r_i)).
struct GatedPoolParams {
  numkit::Tensor v;  // d_a x d, tanh branch
  numkit::Tensor u;  // d_a x d, sigmoid branch
  numkit::Tensor w;  // 1 x d_a
};

MgcaParams init_mgca(std::size_t d, std::size_t heads, numkit::Rng& rng);
GatedPoolParams init_gated_pool(std::size_t d, std::size_t d_a, numkit::Rng& rng);
void collect(const std::string& prefix, MgcaParams& p, numkit::ParamList& out);
void collect(const std::string& prefix, GatedPoolParams& p, numkit::ParamList& out);

struct AttentionResult {
  numkit::Var output;                  // d x m
  std::vector<numkit::Var> weights;    // one m x n row-stochastic matrix per head
};

// Multi-head scaled dot-product attention of `query` (d x m) over
// `context` (d x n). Output has one token per query token.
AttentionResult mgca(numkit::ParamBinder& binder, numkit::Var query, numkit::Var context, const MgcaParams& params);

struct PoolResult {
  numkit::Var pooled;   // d x 1
  numkit::Var weights;  // 1 x n, on the simplex
};

PoolResult gated_attention_pool(numkit::ParamBinder& binder, numkit::Var tokens, const GatedPoolParams& params);

}  // namespace mgct::model
