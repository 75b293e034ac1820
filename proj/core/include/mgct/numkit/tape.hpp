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
#include <deque>
#include <functional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mgct/numkit/tensor.hpp"

namespace mgct::numkit {

class Tape;

// Deliberate gradient corruption used to prove the verification suite
// detects broken backward rules. Never set outside of tests.
enum class GradientFault : std::uint8_t {
  kNone,
  kTanhSign,
};

struct TapeOptions {
  GradientFault fault = GradientFault::kNone;
};

/// Handle to a value recorded on a Tape.
class Var {
 public:
  Var() = default;
  Var(Tape* tape, std::uint32_t id) : tape_(tape), id_(id) {}

  Tape& tape() const { return *tape_; }
  std::uint32_t id() const { return id_; }
  bool valid() const { return tape_ != nullptr; }

  const Tensor& value() const;
  Shape shape() const { return value().shape(); }
  std::size_t rows() const { return value().rows(); }
  std::size_t cols() const { return value().cols(); }
  bool requires_grad() const;

 private:
  Tape* tape_ = nullptr;
  std::uint32_t id_ = 0;
};

// Accumulates the gradient of a node into the slots of its parents. A slot
// is nullptr when that parent does not require a gradient.
using BackwardFn = std::function<void(const Tensor& grad_out, std::span<Tensor* const> parent_grads)>;

/// Gradients produced by Tape::backward, indexed by node.
class Gradients {
 public:
  explicit Gradients(std::vector<Tensor> grads) : grads_(std::move(grads)) {}

  // Gradient of the loss w.r.t. `v`. A zero tensor of v's shape when the loss
  // does not depend on v.
  Tensor of(Var v) const;
  bool has(Var v) const { return v.id() < grads_.size() && !grads_[v.id()].empty(); }

 private:
  std::vector<Tensor> grads_;
};

/// Append-only record of primitive operations for reverse-mode
/// differentiation. Nodes are stored in creation order, which is a
/// topological order because an op can only reference existing nodes.
///
/// Single writer. A Tape must outlive every Var that refers to it, and
/// parameter leaves must outlive the Tape.
class Tape {
 public:
  explicit Tape(TapeOptions options = {}) : options_(options) {}
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  const TapeOptions& options() const { return options_; }

  // Leaf that owns its value and never receives a gradient.
  Var constant(Tensor value);
  // Leaf that owns its value and receives a gradient.
  Var variable(Tensor value);
  // Leaf that refers to an external tensor (no copy) and receives a gradient.
  Var parameter(const Tensor& value);

  // Records an op node. `backward` may be empty when no parent requires grad.
  Var record(std::string_view op, Tensor value, std::vector<std::uint32_t> parents, BackwardFn backward);

  const Tensor& value(std::uint32_t id) const;
  bool requires_grad(std::uint32_t id) const { return nodes_[id].requires_grad; }
  std::string_view op_name(std::uint32_t id) const { return nodes_[id].op; }
  std::size_t size() const { return nodes_.size(); }

  // Reverse sweep from a 1x1 loss. Visits each node at most once.
  // Throws ContractError when the loss is not scalar or lives elsewhere.
  Gradients backward(Var loss) const;

 private:
  struct Node {
    std::string_view op;
    Tensor owned;
    const Tensor* external = nullptr;
    std::vector<std::uint32_t> parents;
    BackwardFn backward;
    bool requires_grad = false;
  };

  TapeOptions options_;
  std::deque<Node> nodes_;  // stable addresses: value() references survive later records
};

inline const Tensor& Var::value() const { return tape_->value(id_); }
inline bool Var::requires_grad() const { return tape_->requires_grad(id_); }

/// Binds parameter tensors to a tape once each, keyed by address.
class ParamBinder {
 public:
  explicit ParamBinder(Tape& tape) : tape_(&tape) {}

  Tape& tape() const { return *tape_; }
  Var operator()(const Tensor& param);
  // Gradient for a previously bound parameter; zeros if it was never bound.
  Tensor grad_of(const Tensor& param, const Gradients& grads) const;

 private:
  Tape* tape_;
  std::unordered_map<const Tensor*, Var> bound_;
};

}  // namespace mgct::numkit
