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

#include <benchmark/benchmark.h>

#include "mgct/dataio/synthesize.hpp"
#include "mgct/model/mgct_model.hpp"
#include "mgct/numkit/rng.hpp"
#include "mgct/survival/loss.hpp"
#include "mgct/survival/metrics.hpp"
#include "mgct/train/trainer.hpp"

namespace {

using namespace mgct;

numkit::Tensor random_tensor(std::size_t rows, std::size_t cols, numkit::Rng& rng) {
  numkit::Tensor t(rows, cols);
  for (auto& v : t.data()) v = rng.normal();
  return t;
}

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  numkit::Rng rng(1);
  const numkit::Tensor a = random_tensor(n, n, rng), b = random_tensor(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(numkit::matmul(a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n * n));
}
BENCHMARK(BM_Matmul)->Arg(32)->Arg(64)->Arg(128);

struct ModelFixture {
  dataio::Dataset data = dataio::synthesize({});
  model::MgctModel net{train::model_config(data, train::TrainConfig{}, model::ablation_preset('E')), 7};
};

void BM_ModelForward(benchmark::State& state) {
  static const ModelFixture fx;
  std::size_t i = 0;
  for (auto _ : state) {
    numkit::Tape tape;
    numkit::ParamBinder b(tape);
    benchmark::DoNotOptimize(fx.net.forward(b, fx.data.samples[i++ % fx.data.samples.size()]).value());
  }
}
BENCHMARK(BM_ModelForward);

void BM_ModelForwardBackward(benchmark::State& state) {
  static const ModelFixture fx;
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& s = fx.data.samples[i++ % fx.data.samples.size()];
    numkit::Tape tape;
    numkit::ParamBinder b(tape);
    const model::ForwardOptions fwd{.training = true, .seed = 7, .step = i, .trace = nullptr};
    numkit::Var loss = survival::nll_loss(fx.net.forward(b, s, fwd), {.t = s.t_months, .event = s.event, .bin = 1});
    benchmark::DoNotOptimize(tape.backward(loss));
  }
}
BENCHMARK(BM_ModelForwardBackward);

void BM_ConcordanceIndex(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  numkit::Rng rng(2);
  std::vector<double> risk(n);
  std::vector<survival::Outcome> o(n);
  for (std::size_t i = 0; i < n; ++i) {
    risk[i] = rng.normal();
    o[i] = {rng.exponential(0.1), rng.uniform() < 0.7 ? 1 : 0};
  }
  for (auto _ : state) benchmark::DoNotOptimize(survival::concordance_index(risk, o));
}
BENCHMARK(BM_ConcordanceIndex)->Arg(200)->Arg(2000);

}  // namespace
