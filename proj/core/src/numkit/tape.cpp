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

#include "mgct/numkit/tape.hpp"

#include "mgct/errors.hpp"

namespace mgct::numkit {

Tensor Gradients::of(Var v) const {
  if (has(v)) return grads_[v.id()];
  return Tensor(v.rows(), v.cols());
}

Var Tape::constant(Tensor value) {
  Node n;
  n.op = "constant";
  n.owned = std::move(value);
  nodes_.push_back(std::move(n));
  return Var(this, static_cast<std::uint32_t>(nodes_.size() - 1));
}

Var Tape::variable(Tensor value) {
  Node n;
  n.op = "variable";
  n.owned = std::move(value);
  n.requires_grad = true;
  nodes_.push_back(std::move(n));
  return Var(this, static_cast<std::uint32_t>(nodes_.size() - 1));
}

Var Tape::parameter(const Tensor& value) {
  Node n;
  n.op = "parameter";
  n.external = &value;
  n.requires_grad = true;
  nodes_.push_back(std::move(n));
  return Var(this, static_cast<std::uint32_t>(nodes_.size() - 1));
}

Var Tape::record(std::string_view op, Tensor value, std::vector<std::uint32_t> parents, BackwardFn backward) {
  Node n;
  n.op = op;
  n.owned = std::move(value);
  for (auto p : parents) {
    if (p >= nodes_.size()) throw ContractError(std::string(op) + ": parent node does not exist");
    n.requires_grad = n.requires_grad || nodes_[p].requires_grad;
  }
  n.parents = std::move(parents);
  if (n.requires_grad) n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return Var(this, static_cast<std::uint32_t>(nodes_.size() - 1));
}

const Tensor& Tape::value(std::uint32_t id) const {
  const Node& n = nodes_[id];
  return n.external != nullptr ? *n.external : n.owned;
}

Gradients Tape::backward(Var loss) const {
  if (&loss.tape() != this) throw ContractError("backward: loss was recorded on a different tape");
  if (loss.shape() != Shape{1, 1}) {
    throw ContractError("backward: loss must be 1x1, got " + to_string(loss.shape()));
  }
  std::vector<Tensor> grads(nodes_.size());
  grads[loss.id()] = Tensor(1, 1, 1.0);
  std::vector<Tensor*> slots;
  for (std::size_t i = loss.id() + 1; i-- > 0;) {
    const Node& n = nodes_[i];
    if (grads[i].empty() || !n.backward) continue;
    slots.assign(n.parents.size(), nullptr);
    for (std::size_t k = 0; k < n.parents.size(); ++k) {
      const std::uint32_t p = n.parents[k];
      if (!nodes_[p].requires_grad) continue;
      if (grads[p].empty()) {
        const Tensor& pv = value(p);
        grads[p] = Tensor(pv.rows(), pv.cols());
      }
      slots[k] = &grads[p];
    }
    n.backward(grads[i], slots);
  }
  return Gradients(std::move(grads));
}

Var ParamBinder::operator()(const Tensor& param) {
  auto it = bound_.find(&param);
  if (it != bound_.end()) return it->second;
  Var v = tape_->parameter(param);
  bound_.emplace(&param, v);
  return v;
}

Tensor ParamBinder::grad_of(const Tensor& param, const Gradients& grads) const {
  auto it = bound_.find(&param);
  if (it == bound_.end()) return Tensor(param.rows(), param.cols());
  return grads.of(it->second);
}

}  // namespace mgct::numkit
