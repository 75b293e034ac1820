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

#include "mgct/numkit/tape.hpp"

namespace mgct::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  numkit::GradientFault fault = numkit::GradientFault::kNone;
  std::uint64_t seed = 1;
  std::size_t simplex_trials = 200;
  std::size_t permutation_trials = 20;
};

/// Finite-difference gradient checks for every primitive and model block,
/// simplex checks on attention and pooling weights, and patch-permutation
/// invariance of the fused embedding.
std::vector<CheckResult> run_suite(const VerifyOptions& options = {});

}  // namespace mgct::verify
