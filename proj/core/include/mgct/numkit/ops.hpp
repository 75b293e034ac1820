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

#include <cstddef>
#include <cstdint>

#include "mgct/numkit/tape.hpp"

// Differentiable primitives. Every op takes Vars from one tape and records
// its result on that tape; mixing tapes is a ContractError.
namespace mgct::numkit {

enum class Activation : std::uint8_t { kTanh, kSigmoid, kElu, kRelu };
enum class Axis : std::uint8_t { kRows, kCols };

std::string_view to_string(Activation kind);

Var matmul(Var a, Var b);
Var transpose(Var a);
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var hadamard(Var a, Var b);
Var scale(Var a, double factor);
// factor * a + shift, entry-wise.
Var affine(Var a, double factor, double shift);
// Adds an m x 1 column to every column of an m x n tensor.
Var add_column(Var a, Var column);

// Each row is replaced by its softmax; rows are stabilized by max subtraction.
Var softmax_rows(Var a);
// ELU uses alpha = 1.
Var activation(Var a, Activation kind);

Var concat(Var a, Var b, Axis axis);
Var slice_rows(Var a, std::size_t begin, std::size_t count);
Var slice_cols(Var a, std::size_t begin, std::size_t count);

Var sum(Var a);
// m x n -> m x 1 mean over columns.
Var mean_cols(Var a);
// 1 x 1 entry (r, c) of a.
Var element(Var a, std::size_t r, std::size_t c);
// Cumulative product along each row.
Var cumprod_cols(Var a);
// log(max(a, floor)); entries below the floor get zero gradient.
Var log_clamped(Var a, double floor);

struct DropoutKey {
  std::uint64_t seed = 0;
  std::uint64_t layer = 0;
  std::uint64_t step = 0;
};

// Self-normalizing dropout: dropped entries go to the SELU saturation value
// and the result is affinely corrected so that a standard-normal input keeps
// zero mean and unit variance. Identity when !training or p == 0.
// Throws ContractError unless 0 <= p < 1.
Var alpha_dropout(Var a, double p, DropoutKey key, bool training);

}  // namespace mgct::numkit
