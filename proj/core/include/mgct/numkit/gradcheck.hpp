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

#include <functional>
#include <string>
#include <vector>

#include "mgct/numkit/params.hpp"
#include "mgct/numkit/tape.hpp"

namespace mgct::numkit {

struct GradCheckOptions {
  double step = 1e-5;
  // Relative error is |analytic - numeric| / max(|analytic|, |numeric|, floor).
  double floor = 1e-6;
  double tolerance = 1e-4;
  TapeOptions tape;
};

struct GradCheckReport {
  std::size_t entries_checked = 0;
  double max_rel_error = 0.0;
  std::string worst_param;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  bool passed = true;
};

// Builds the scalar loss from parameters bound through the binder.
using LossFn = std::function<Var(ParamBinder&)>;

double relative_error(double analytic, double numeric, double floor);

/// Compares tape gradients with central finite differences for every entry
/// of every parameter. Parameters are perturbed in place and restored.
GradCheckReport check_gradients(const LossFn& loss, const ParamList& params,
                                const GradCheckOptions& options = {});

}  // namespace mgct::numkit
