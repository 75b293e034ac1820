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
#include <string>
#include <vector>

#include "mgct/numkit/ops.hpp"
#include "mgct/numkit/params.hpp"
#include "mgct/numkit/tape.hpp"

namespace mgct::embed {

inline constexpr std::size_t kDefaultSnnHidden = 256;
inline constexpr double kDefaultDropout = 0.25;

/// Independent self-normalizing network for one genomic category:
/// two hidden layers (linear, ELU, alpha dropout) and a projection to d.
struct SnnCategoryParams {
  numkit::Tensor w1, b1;
  numkit::Tensor w2, b2;
  numkit::Tensor w_out, b_out;

  std::size_t input_length() const { return w1.cols(); }
};

struct SnnParams {
  std::vector<SnnCategoryParams> categories;

  std::size_t width() const { return categories.empty() ? 0 : categories.front().w_out.rows(); }
};

struct PatchProjParams {
  numkit::Tensor weight;  // d x d_in
  numkit::Tensor bias;    // d x 1
};

SnnParams init_snn(const std::vector<std::size_t>& input_lengths, std::size_t hidden, std::size_t d,
                   numkit::Rng& rng);
PatchProjParams init_patch_projection(std::size_t d_in, std::size_t d, numkit::Rng& rng);

void collect(const std::string& prefix, SnnParams& p, numkit::ParamList& out);
void collect(const std::string& prefix, PatchProjParams& p, numkit::ParamList& out);

struct DropoutContext {
  bool training = false;
  double rate = kDefaultDropout;
  std::uint64_t seed = 0;
  std::uint64_t step = 0;
};

// d x S genomic tokens; column s depends only on raw[s].
numkit::Var embed_genomics(numkit::ParamBinder& binder, const std::vector<std::vector<double>>& raw,
                           const SnnParams& params, const DropoutContext& dropout);

// d x N patch tokens; the same affine map is applied to every column.
numkit::Var embed_patches(numkit::ParamBinder& binder, numkit::Var patches, const PatchProjParams& params);

}  // namespace mgct::embed
