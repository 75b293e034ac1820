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

#include "mgct/model/attention.hpp"

#include <cmath>

#include "mgct/errors.hpp"

namespace mgct::model {

using numkit::Var;
namespace nk = numkit;

MgcaParams init_mgca(std::size_t d, std::size_t heads, numkit::Rng& rng) {
  if (heads == 0 || d % heads != 0) {
    throw ContractError("init_mgca: width " + std::to_string(d) + " is not divisible by " + std::to_string(heads) +
                        " heads");
  }
  MgcaParams p;
  p.w_q = nk::xavier_uniform(d, d, rng);
  p.w_k = nk::xavier_uniform(d, d, rng);
  p.w_v = nk::xavier_uniform(d, d, rng);
  p.heads = heads;
  return p;
}

GatedPoolParams init_gated_pool(std::size_t d, std::size_t d_a, numkit::Rng& rng) {
  if (d_a == 0) throw ContractError("init_gated_pool: d_a must be positive");
  GatedPoolParams p;
  p.v = nk::xavier_uniform(d_a, d, rng);
  p.u = nk::xavier_uniform(d_a, d, rng);
  p.w = nk::xavier_uniform(1, d_a, rng);
  return p;
}

void collect(const std::string& prefix, MgcaParams& p, numkit::ParamList& out) {
  out.push_back({prefix + ".w_q", &p.w_q});
  out.push_back({prefix + ".w_k", &p.w_k});
  out.push_back({prefix + ".w_v", &p.w_v});
}

void collect(const std::string& prefix, GatedPoolParams& p, numkit::ParamList& out) {
  out.push_back({prefix + ".v", &p.v});
  out.push_back({prefix + ".u", &p.u});
  out.push_back({prefix + ".w", &p.w});
}

AttentionResult mgca(numkit::ParamBinder& binder, Var query, Var context, const MgcaParams& params) {
  if (query.cols() == 0 || context.cols() == 0) throw ContractError("mgca: empty token set");
  const std::size_t d = params.w_q.rows();
  if (query.rows() != d || context.rows() != d) {
    throw ShapeError("mgca: tokens " + nk::to_string(query.shape()) + " and " + nk::to_string(context.shape()) +
                     " do not match width " + std::to_string(d));
  }
  const std::size_t dk = d / params.heads;
  const double inv_sqrt_dk = 1.0 / std::sqrt(static_cast<double>(dk));

  Var q = nk::matmul(binder(params.w_q), query);    // d x m
  Var k = nk::matmul(binder(params.w_k), context);  // d x n
  Var v = nk::matmul(binder(params.w_v), context);  // d x n

  AttentionResult result;
  for (std::size_t h = 0; h < params.heads; ++h) {
    Var qh = params.heads == 1 ? q : nk::slice_rows(q, h * dk, dk);
    Var kh = params.heads == 1 ? k : nk::slice_rows(k, h * dk, dk);
    Var vh = params.heads == 1 ? v : nk::slice_rows(v, h * dk, dk);
    Var scores = nk::scale(nk::matmul(nk::transpose(qh), kh), inv_sqrt_dk);  // m x n
    Var weights = nk::softmax_rows(scores);
    Var head = nk::matmul(vh, nk::transpose(weights));  // dk x m
    result.output = h == 0 ? head : nk::concat(result.output, head, nk::Axis::kRows);
    result.weights.push_back(weights);
  }
  return result;
}

PoolResult gated_attention_pool(numkit::ParamBinder& binder, Var tokens, const GatedPoolParams& params) {
  if (tokens.cols() == 0) throw ContractError("gated_attention_pool: empty token set");
  if (tokens.rows() != params.v.cols()) {
    throw ShapeError("gated_attention_pool: tokens " + nk::to_string(tokens.shape()) + " do not match gate width " +
                     std::to_string(params.v.cols()));
  }
  Var a = nk::activation(nk::matmul(binder(params.v), tokens), nk::Activation::kTanh);     // d_a x n
  Var b = nk::activation(nk::matmul(binder(params.u), tokens), nk::Activation::kSigmoid);  // d_a x n
  Var scores = nk::matmul(binder(params.w), nk::hadamard(a, b));                            // 1 x n
  Var alpha = nk::softmax_rows(scores);
  return {nk::matmul(tokens, nk::transpose(alpha)), alpha};
}

}  // namespace mgct::model
