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

#include "mgct/numkit/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "mgct/errors.hpp"

namespace mgct::numkit {
namespace {

double evaluate(const LossFn& loss, const TapeOptions& options) {
  Tape tape(options);
  ParamBinder binder(tape);
  return loss(binder).value()[0];
}

}  // namespace

Tensor xavier_uniform(std::size_t rows, std::size_t cols, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  Tensor t(rows, cols);
  for (auto& v : t.data()) v = rng.uniform(-limit, limit);
  return t;
}

std::size_t count_entries(const ParamList& params) {
  std::size_t n = 0;
  for (const auto& p : params) n += p.tensor->size();
  return n;
}

double relative_error(double analytic, double numeric, double floor) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), floor});
  return std::abs(analytic - numeric) / denom;
}

GradCheckReport check_gradients(const LossFn& loss, const ParamList& params,
                                const GradCheckOptions& options) {
  std::vector<Tensor> analytic;
  {
    Tape tape(options.tape);
    ParamBinder binder(tape);
    Var out = loss(binder);
    Gradients grads = tape.backward(out);
    for (const auto& p : params) analytic.push_back(binder.grad_of(*p.tensor, grads));
  }

  GradCheckReport report;
  for (std::size_t k = 0; k < params.size(); ++k) {
    Tensor& w = *params[k].tensor;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double saved = w[i];
      w[i] = saved + options.step;
      const double up = evaluate(loss, options.tape);
      w[i] = saved - options.step;
      const double down = evaluate(loss, options.tape);
      w[i] = saved;
      const double numeric = (up - down) / (2.0 * options.step);
      double err = relative_error(analytic[k][i], numeric, options.floor);
      if (!std::isfinite(err)) err = INFINITY;
      ++report.entries_checked;
      if (report.worst_param.empty() || err > report.max_rel_error) {
        report.max_rel_error = err;
        report.worst_param = params[k].name;
        report.worst_index = i;
        report.worst_analytic = analytic[k][i];
        report.worst_numeric = numeric;
      }
    }
  }
  report.passed = report.entries_checked > 0 && report.max_rel_error < options.tolerance;
  return report;
}

}  // namespace mgct::numkit
