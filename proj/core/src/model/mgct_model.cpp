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

#include "mgct/model/mgct_model.hpp"

#include "mgct/errors.hpp"

namespace mgct::model {

using numkit::Var;

void ModelConfig::validate() const {
  if (d_in == 0) throw ContractError("model config: d_in must be positive");
  if (category_lengths.empty()) throw ContractError("model config: need at least one genomic category");
  for (std::size_t len : category_lengths) {
    if (len == 0) throw ContractError("model config: genomic category with no genes");
  }
  if (snn_hidden == 0) throw ContractError("model config: snn_hidden must be positive");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw ContractError("model config: dropout must be in [0, 1)");
  fusion.validate();
}

MgctModel::MgctModel(ModelConfig config, std::uint64_t seed) : config_(std::move(config)) {
  config_.validate();
  numkit::Rng rng(seed);
  patch_proj = embed::init_patch_projection(config_.d_in, config_.fusion.d, rng);
  snn = embed::init_snn(config_.category_lengths, config_.snn_hidden, config_.fusion.d, rng);
  fusion = init_fusion(config_.fusion, config_.ablation, rng);
  head = init_head(config_.fusion, rng);
}

Var MgctModel::fused_embedding(numkit::ParamBinder& binder, const dataio::BagSample& sample,
                               const ForwardOptions& options) const {
  if (sample.patches.rows() != config_.d_in) {
    throw ShapeError("sample '" + sample.sample_id + "' has bag width " + std::to_string(sample.patches.rows()) +
                     ", model expects " + std::to_string(config_.d_in));
  }
  numkit::Tape& tape = binder.tape();
  Var histology = embed::embed_patches(binder, tape.constant(sample.patches), patch_proj);
  const embed::DropoutContext dropout{options.training, config_.dropout, options.seed, options.step};
  Var genomic = embed::embed_genomics(binder, sample.genomic, snn, dropout);
  return fuse(binder, histology, genomic, fusion, config_.fusion, options.trace);
}

Var MgctModel::forward(numkit::ParamBinder& binder, const dataio::BagSample& sample,
                       const ForwardOptions& options) const {
  return classify(binder, fused_embedding(binder, sample, options), head);
}

numkit::ParamList MgctModel::params() {
  numkit::ParamList out;
  embed::collect("patch_proj", patch_proj, out);
  embed::collect("snn", snn, out);
  collect("fusion", fusion, out);
  collect("head", head, out);
  return out;
}

std::size_t MgctModel::parameter_count() const {
  return numkit::count_entries(const_cast<MgctModel*>(this)->params());
}

}  // namespace mgct::model
