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

#include "mgct/model/fusion.hpp"

#include "mgct/errors.hpp"

namespace mgct::model {

using numkit::Var;
namespace nk = numkit;

AblationSpec ablation_preset(char model) {
  switch (model) {
    case 'A':
      return {false, false, false, false};
    case 'B':
      return {true, false, false, false};
    case 'C':
      return {true, true, false, false};
    case 'D':
      return {true, true, true, false};
    case 'E':
      return {true, true, true, true};
    default:
      throw ContractError(std::string("unknown ablation preset '") + model + "', expected A-E");
  }
}

std::string preset_name(const AblationSpec& spec) {
  for (char m : {'A', 'B', 'C', 'D', 'E'}) {
    if (ablation_preset(m) == spec) return std::string(1, m);
  }
  return "custom";
}

void FusionConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ContractError("fusion config: " + msg); };
  if (stage1_layers == 0 || stage2_layers == 0) fail("each stage needs at least one layer");
  if (d == 0 || d_a == 0 || d_ff == 0) fail("widths must be positive");
  if (heads == 0 || d % heads != 0) fail("d must be divisible by the head count");
  if (bins < 2) fail("need at least two hazard bins");
}

namespace {

LayerStack init_stack(std::size_t layers, const FusionConfig& c, const AblationSpec& a, nk::Rng& rng) {
  LayerStack stack(layers);
  for (std::size_t i = 0; i < layers; ++i) {
    auto& l = stack[i];
    if (a.mgca) l.mgca = init_mgca(c.d, c.heads, rng);
    if (a.gap && i + 1 == layers) l.pool = init_gated_pool(c.d, c.d_a, rng);
    if (a.feedforward) {
      FeedForwardParams ff;
      ff.w1 = nk::xavier_uniform(c.d_ff, c.d, rng);
      ff.b1 = nk::Tensor(c.d_ff, 1);
      ff.w2 = nk::xavier_uniform(c.d, c.d_ff, rng);
      ff.b2 = nk::Tensor(c.d, 1);
      ff.w_xi = nk::xavier_uniform(c.d, c.d, rng);
      l.ff = std::move(ff);
    }
  }
  return stack;
}

void collect_stack(const std::string& prefix, LayerStack& stack, nk::ParamList& out) {
  for (std::size_t i = 0; i < stack.size(); ++i) {
    auto& l = stack[i];
    const std::string base = prefix + "." + std::to_string(i);
    if (l.mgca) collect(base + ".mgca", *l.mgca, out);
    if (l.pool) collect(base + ".pool", *l.pool, out);
    if (l.ff) {
      out.push_back({base + ".ff.w1", &l.ff->w1});
      out.push_back({base + ".ff.b1", &l.ff->b1});
      out.push_back({base + ".ff.w2", &l.ff->w2});
      out.push_back({base + ".ff.b2", &l.ff->b2});
      out.push_back({base + ".ff.w_xi", &l.ff->w_xi});
    }
  }
}

Var run_stack(nk::ParamBinder& binder, const LayerStack& stack, Var query, Var context, bool residual,
              FusionTrace* trace) {
  for (std::size_t i = 0; i < stack.size(); ++i) {
    query = mgct_layer(binder, query, context, stack[i], i + 1 == stack.size(), residual, trace);
  }
  return query;
}

}  // namespace

FusionParams init_fusion(const FusionConfig& config, const AblationSpec& ablation, numkit::Rng& rng) {
  config.validate();
  FusionParams p;
  p.stage1_g_to_h = init_stack(config.stage1_layers, config, ablation, rng);
  p.stage1_h_to_g = init_stack(config.stage1_layers, config, ablation, rng);
  if (ablation.deep_fusion) {
    p.stage2_f_to_h = init_stack(config.stage2_layers, config, ablation, rng);
    p.stage2_h_to_f = init_stack(config.stage2_layers, config, ablation, rng);
  }
  return p;
}

HeadParams init_head(const FusionConfig& config, numkit::Rng& rng) {
  return {nk::xavier_uniform(config.bins, 2 * config.d, rng), nk::Tensor(config.bins, 1)};
}

void collect(const std::string& prefix, FusionParams& p, numkit::ParamList& out) {
  collect_stack(prefix + ".stage1.g_to_h", p.stage1_g_to_h, out);
  collect_stack(prefix + ".stage1.h_to_g", p.stage1_h_to_g, out);
  collect_stack(prefix + ".stage2.f_to_h", p.stage2_f_to_h, out);
  collect_stack(prefix + ".stage2.h_to_f", p.stage2_h_to_f, out);
}

void collect(const std::string& prefix, HeadParams& p, numkit::ParamList& out) {
  out.push_back({prefix + ".w", &p.w});
  out.push_back({prefix + ".b", &p.b});
}

Var mgct_layer(numkit::ParamBinder& binder, Var query, Var context, const MgctLayerParams& params, bool stage_final,
               bool residual, FusionTrace* trace) {
  Var r = query;
  if (params.mgca) {
    AttentionResult att = mgca(binder, query, context, *params.mgca);
    r = residual ? nk::add(query, att.output) : att.output;
    if (trace) {
      for (Var w : att.weights) trace->attention.push_back(w.value());
    }
  }
  if (stage_final) {
    if (params.pool) {
      PoolResult pooled = gated_attention_pool(binder, r, *params.pool);
      r = pooled.pooled;
      if (trace) trace->pool_weights.push_back(pooled.weights.value());
    } else {
      r = nk::mean_cols(r);
    }
  }
  if (params.ff) {
    const auto& ff = *params.ff;
    Var hidden = nk::activation(nk::add_column(nk::matmul(binder(ff.w1), r), binder(ff.b1)), nk::Activation::kRelu);
    Var out = nk::add_column(nk::matmul(binder(ff.w2), hidden), binder(ff.b2));
    r = nk::matmul(binder(ff.w_xi), out);
  }
  return r;
}

Var fuse(numkit::ParamBinder& binder, Var histology, Var genomic, const FusionParams& params,
         const FusionConfig& config, FusionTrace* trace) {
  if (histology.cols() == 0 || genomic.cols() == 0) throw ContractError("fuse: empty modality");
  if (histology.rows() != config.d || genomic.rows() != config.d) {
    throw ShapeError("fuse: tokens " + nk::to_string(histology.shape()) + " and " + nk::to_string(genomic.shape()) +
                     " do not match width " + std::to_string(config.d));
  }
  Var g_to_h = run_stack(binder, params.stage1_g_to_h, genomic, histology, config.residual, trace);
  Var h_to_g = run_stack(binder, params.stage1_h_to_g, histology, genomic, config.residual, trace);
  if (params.stage2_f_to_h.empty()) return nk::concat(g_to_h, h_to_g, nk::Axis::kRows);

  Var fused1 = nk::concat(g_to_h, h_to_g, nk::Axis::kCols);  // d x 2
  Var f_to_h = run_stack(binder, params.stage2_f_to_h, fused1, histology, config.residual, trace);
  Var h_to_f = run_stack(binder, params.stage2_h_to_f, histology, fused1, config.residual, trace);
  return nk::concat(f_to_h, h_to_f, nk::Axis::kRows);
}

Var classify(numkit::ParamBinder& binder, Var fused, const HeadParams& params) {
  if (fused.cols() != 1 || fused.rows() != params.w.cols()) {
    throw ShapeError("classify: embedding " + nk::to_string(fused.shape()) + " does not match head input " +
                     std::to_string(params.w.cols()));
  }
  return nk::transpose(nk::add_column(nk::matmul(binder(params.w), fused), binder(params.b)));
}

}  // namespace mgct::model
