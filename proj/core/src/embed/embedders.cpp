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

#include "mgct/embed/embedders.hpp"

#include "mgct/errors.hpp"

namespace mgct::embed {

using numkit::Activation;
using numkit::Tensor;
using numkit::Var;

SnnParams init_snn(const std::vector<std::size_t>& input_lengths, std::size_t hidden, std::size_t d,
                   numkit::Rng& rng) {
  if (input_lengths.empty() || hidden == 0 || d == 0) throw ContractError("init_snn: empty dimensions");
  SnnParams p;
  for (std::size_t len : input_lengths) {
    if (len == 0) throw ContractError("init_snn: category with no inputs");
    SnnCategoryParams c;
    c.w1 = numkit::xavier_uniform(hidden, len, rng);
    c.b1 = Tensor(hidden, 1);
    c.w2 = numkit::xavier_uniform(hidden, hidden, rng);
    c.b2 = Tensor(hidden, 1);
    c.w_out = numkit::xavier_uniform(d, hidden, rng);
    c.b_out = Tensor(d, 1);
    p.categories.push_back(std::move(c));
  }
  return p;
}

PatchProjParams init_patch_projection(std::size_t d_in, std::size_t d, numkit::Rng& rng) {
  return {numkit::xavier_uniform(d, d_in, rng), Tensor(d, 1)};
}

void collect(const std::string& prefix, SnnParams& p, numkit::ParamList& out) {
  for (std::size_t s = 0; s < p.categories.size(); ++s) {
    auto& c = p.categories[s];
    const std::string base = prefix + "." + std::to_string(s) + ".";
    out.push_back({base + "w1", &c.w1});
    out.push_back({base + "b1", &c.b1});
    out.push_back({base + "w2", &c.w2});
    out.push_back({base + "b2", &c.b2});
    out.push_back({base + "w_out", &c.w_out});
    out.push_back({base + "b_out", &c.b_out});
  }
}

void collect(const std::string& prefix, PatchProjParams& p, numkit::ParamList& out) {
  out.push_back({prefix + ".weight", &p.weight});
  out.push_back({prefix + ".bias", &p.bias});
}

Var embed_genomics(numkit::ParamBinder& binder, const std::vector<std::vector<double>>& raw, const SnnParams& params,
                   const DropoutContext& dropout) {
  if (raw.size() != params.categories.size()) {
    throw ShapeError("embed_genomics: " + std::to_string(raw.size()) + " categories given, network has " +
                     std::to_string(params.categories.size()));
  }
  numkit::Tape& tape = binder.tape();
  Var tokens;
  for (std::size_t s = 0; s < raw.size(); ++s) {
    const auto& c = params.categories[s];
    if (raw[s].size() != c.input_length()) {
      throw ShapeError("embed_genomics: category " + std::to_string(s) + " has " + std::to_string(raw[s].size()) +
                       " values, network expects " + std::to_string(c.input_length()));
    }
    Var x = tape.constant(Tensor::column(raw[s]));
    const numkit::DropoutKey k1{dropout.seed, 2 * s, dropout.step};
    const numkit::DropoutKey k2{dropout.seed, 2 * s + 1, dropout.step};
    x = numkit::add_column(numkit::matmul(binder(c.w1), x), binder(c.b1));
    x = numkit::alpha_dropout(numkit::activation(x, Activation::kElu), dropout.rate, k1, dropout.training);
    x = numkit::add_column(numkit::matmul(binder(c.w2), x), binder(c.b2));
    x = numkit::alpha_dropout(numkit::activation(x, Activation::kElu), dropout.rate, k2, dropout.training);
    x = numkit::add_column(numkit::matmul(binder(c.w_out), x), binder(c.b_out));
    tokens = s == 0 ? x : numkit::concat(tokens, x, numkit::Axis::kCols);
  }
  return tokens;
}

Var embed_patches(numkit::ParamBinder& binder, Var patches, const PatchProjParams& params) {
  if (patches.rows() != params.weight.cols()) {
    throw ShapeError("embed_patches: bag width " + std::to_string(patches.rows()) + " does not match projection input " +
                     std::to_string(params.weight.cols()));
  }
  return numkit::add_column(numkit::matmul(binder(params.weight), patches), binder(params.bias));
}

}  // namespace mgct::embed
