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

#include "mgct/verify/verify_suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "mgct/embed/embedders.hpp"
#include "mgct/model/attention.hpp"
#include "mgct/model/mgct_model.hpp"
#include "mgct/numkit/gradcheck.hpp"
#include "mgct/numkit/ops.hpp"
#include "mgct/survival/loss.hpp"

namespace mgct::verify {
namespace {

namespace nk = numkit;
using nk::Tensor;
using nk::Var;

Tensor random_tensor(std::size_t r, std::size_t c, nk::Rng& rng, double lo = -1.0, double hi = 1.0) {
  Tensor t(r, c);
  for (auto& v : t.data()) v = rng.uniform(lo, hi);
  return t;
}

// Fixed random projection to a scalar so every output entry gets a distinct weight.
Var project(Var out, nk::Rng& rng) {
  Tensor w = random_tensor(out.rows(), out.cols(), rng);
  return nk::sum(nk::hadamard(out, out.tape().constant(std::move(w))));
}

class Suite {
 public:
  explicit Suite(const VerifyOptions& options) : options_(options), rng_(options.seed) {
    grad_options_.tape.fault = options.fault;
  }

  std::vector<CheckResult> run() {
    primitive_gradients();
    block_gradients();
    simplex_checks();
    permutation_check();
    return std::move(results_);
  }

 private:
  void add(std::string name, bool passed, std::string detail) {
    results_.push_back({std::move(name), passed, std::move(detail)});
  }

  // Builds a loss from an op applied to freshly drawn inputs and checks it.
  void gradient(const std::string& name, std::vector<Tensor> inputs,
                const std::function<Var(std::vector<Var>&)>& op) {
    const std::uint64_t proj_seed = rng_.bits();
    nk::ParamList params;
    for (std::size_t i = 0; i < inputs.size(); ++i) params.push_back({"x" + std::to_string(i), &inputs[i]});
    nk::LossFn loss = [&](nk::ParamBinder& b) {
      std::vector<Var> vars;
      for (auto& t : inputs) vars.push_back(b(t));
      nk::Rng proj(proj_seed);
      return project(op(vars), proj);
    };
    report_gradcheck("gradient:" + name, nk::check_gradients(loss, params, grad_options_));
  }

  void report_gradcheck(const std::string& name, const nk::GradCheckReport& r) {
    std::ostringstream os;
    os << r.entries_checked << " entries, max rel err " << r.max_rel_error;
    if (!r.passed) {
      os << " at " << r.worst_param << "[" << r.worst_index << "] analytic " << r.worst_analytic << " numeric "
         << r.worst_numeric;
    }
    add(name, r.passed, os.str());
  }

  void primitive_gradients() {
    auto t = [&](std::size_t r, std::size_t c) { return random_tensor(r, c, rng_); };
    auto positive = [&](std::size_t r, std::size_t c) { return random_tensor(r, c, rng_, 0.2, 2.0); };
    // Keep inputs away from the ReLU/ELU kink at zero.
    auto off_zero = [&](std::size_t r, std::size_t c) {
      Tensor x = random_tensor(r, c, rng_, 0.1, 1.5);
      for (auto& v : x.data()) v = rng_.uniform() < 0.5 ? -v : v;
      return x;
    };

    gradient("matmul", {t(3, 4), t(4, 5)}, [](auto& v) { return nk::matmul(v[0], v[1]); });
    gradient("transpose", {t(3, 4)}, [](auto& v) { return nk::transpose(v[0]); });
    gradient("add", {t(3, 4), t(3, 4)}, [](auto& v) { return nk::add(v[0], v[1]); });
    gradient("sub", {t(3, 4), t(3, 4)}, [](auto& v) { return nk::sub(v[0], v[1]); });
    gradient("hadamard", {t(3, 4), t(3, 4)}, [](auto& v) { return nk::hadamard(v[0], v[1]); });
    gradient("scale", {t(3, 4)}, [](auto& v) { return nk::scale(v[0], -1.7); });
    gradient("affine", {t(3, 4)}, [](auto& v) { return nk::affine(v[0], 0.6, 0.3); });
    gradient("add_column", {t(3, 4), t(3, 1)}, [](auto& v) { return nk::add_column(v[0], v[1]); });
    gradient("softmax_rows", {t(4, 6)}, [](auto& v) { return nk::softmax_rows(v[0]); });
    gradient("tanh", {t(3, 4)}, [](auto& v) { return nk::activation(v[0], nk::Activation::kTanh); });
    gradient("sigmoid", {t(3, 4)}, [](auto& v) { return nk::activation(v[0], nk::Activation::kSigmoid); });
    gradient("elu", {off_zero(3, 4)}, [](auto& v) { return nk::activation(v[0], nk::Activation::kElu); });
    gradient("relu", {off_zero(3, 4)}, [](auto& v) { return nk::activation(v[0], nk::Activation::kRelu); });
    gradient("concat_rows", {t(2, 3), t(4, 3)}, [](auto& v) { return nk::concat(v[0], v[1], nk::Axis::kRows); });
    gradient("concat_cols", {t(3, 2), t(3, 4)}, [](auto& v) { return nk::concat(v[0], v[1], nk::Axis::kCols); });
    gradient("slice_rows", {t(5, 3)}, [](auto& v) { return nk::slice_rows(v[0], 1, 3); });
    gradient("slice_cols", {t(3, 5)}, [](auto& v) { return nk::slice_cols(v[0], 2, 2); });
    gradient("sum", {t(3, 4)}, [](auto& v) { return nk::sum(v[0]); });
    gradient("mean_cols", {t(3, 5)}, [](auto& v) { return nk::mean_cols(v[0]); });
    gradient("element", {t(3, 4)}, [](auto& v) { return nk::element(v[0], 2, 1); });
    gradient("cumprod_cols", {positive(2, 5)}, [](auto& v) { return nk::cumprod_cols(v[0]); });
    gradient("log_clamped", {positive(3, 4)}, [](auto& v) { return nk::log_clamped(v[0], 1e-7); });
    gradient("alpha_dropout", {t(4, 6)}, [](auto& v) {
      return nk::alpha_dropout(v[0], 0.25, {.seed = 3, .layer = 1, .step = 5}, true);
    });
  }

  void block_gradients() {
    {
      model::MgcaParams p = model::init_mgca(8, 2, rng_);
      std::vector<Tensor> inputs{random_tensor(8, 3, rng_), random_tensor(8, 5, rng_)};
      nk::ParamList params;
      model::collect("mgca", p, params);
      params.push_back({"query", &inputs[0]});
      params.push_back({"context", &inputs[1]});
      const std::uint64_t s = rng_.bits();
      nk::LossFn loss = [&](nk::ParamBinder& b) {
        nk::Rng proj(s);
        return project(model::mgca(b, b(inputs[0]), b(inputs[1]), p).output, proj);
      };
      report_gradcheck("gradient:mgca", nk::check_gradients(loss, params, grad_options_));
    }
    {
      model::GatedPoolParams p = model::init_gated_pool(8, 6, rng_);
      Tensor tokens = random_tensor(8, 7, rng_);
      nk::ParamList params;
      model::collect("pool", p, params);
      params.push_back({"tokens", &tokens});
      const std::uint64_t s = rng_.bits();
      nk::LossFn loss = [&](nk::ParamBinder& b) {
        nk::Rng proj(s);
        return project(model::gated_attention_pool(b, b(tokens), p).pooled, proj);
      };
      report_gradcheck("gradient:gated_pool", nk::check_gradients(loss, params, grad_options_));
    }
    {
      embed::SnnParams p = embed::init_snn({4, 6, 3}, 8, 8, rng_);
      std::vector<std::vector<double>> raw;
      for (std::size_t len : {4, 6, 3}) {
        std::vector<double> g(len);
        for (auto& x : g) x = rng_.normal();
        raw.push_back(std::move(g));
      }
      nk::ParamList params;
      embed::collect("snn", p, params);
      const std::uint64_t s = rng_.bits();
      nk::LossFn loss = [&](nk::ParamBinder& b) {
        nk::Rng proj(s);
        const embed::DropoutContext dropout{.training = true, .rate = 0.25, .seed = 11, .step = 2};
        return project(embed::embed_genomics(b, raw, p, dropout), proj);
      };
      report_gradcheck("gradient:snn", nk::check_gradients(loss, params, grad_options_));
    }
    {
      Tensor logits = random_tensor(1, 4, rng_, -2.0, 2.0);
      nk::ParamList params{{"logits", &logits}};
      for (int event : {0, 1}) {
        const survival::SurvivalLabel label{.t = 10.0, .event = event, .bin = 2};
        nk::LossFn loss = [&](nk::ParamBinder& b) { return survival::nll_loss(b(logits), label); };
        report_gradcheck(event ? "gradient:nll_uncensored" : "gradient:nll_censored",
                         nk::check_gradients(loss, params, grad_options_));
      }
    }
    {
      model::MgctModel net(small_config(), rng_.bits());
      const dataio::BagSample sample = small_sample(12);
      nk::ParamList params = net.params();
      const survival::SurvivalLabel label{.t = 10.0, .event = 1, .bin = 1};
      nk::LossFn loss = [&](nk::ParamBinder& b) {
        const model::ForwardOptions fwd{.training = true, .seed = 5, .step = 1, .trace = nullptr};
        return survival::nll_loss(net.forward(b, sample, fwd), label);
      };
      report_gradcheck("gradient:model_e", nk::check_gradients(loss, params, grad_options_));
    }
  }

  model::ModelConfig small_config() const {
    model::ModelConfig c;
    c.d_in = 10;
    c.category_lengths = {4, 5, 3, 6, 4, 5};
    c.snn_hidden = 8;
    c.fusion.d = 8;
    c.fusion.d_a = 8;
    c.fusion.d_ff = 16;
    c.fusion.bins = 4;
    c.ablation = model::ablation_preset('E');
    return c;
  }

  dataio::BagSample small_sample(std::size_t patches) {
    const auto c = small_config();
    dataio::BagSample s;
    s.sample_id = "verify";
    s.patches = random_tensor(c.d_in, patches, rng_);
    for (std::size_t len : c.category_lengths) {
      std::vector<double> g(len);
      for (auto& x : g) x = rng_.normal();
      s.genomic.push_back(std::move(g));
    }
    s.t_months = 10.0;
    s.event = 1;
    return s;
  }

  void simplex_checks() {
    double worst_sum = 0.0, worst_min = 0.0;
    for (std::size_t trial = 0; trial < options_.simplex_trials; ++trial) {
      const std::size_t heads = 1 + rng_.index(3);
      const std::size_t d = heads * (1 + rng_.index(4));
      const std::size_t m = 1 + rng_.index(6), n = 1 + rng_.index(20);
      const double spread = std::pow(10.0, rng_.uniform(-1.0, 1.5));
      model::MgcaParams att = model::init_mgca(d, heads, rng_);
      model::GatedPoolParams pool = model::init_gated_pool(d, 1 + rng_.index(8), rng_);
      nk::Tape tape;
      nk::ParamBinder b(tape);
      Var q = tape.constant(random_tensor(d, m, rng_, -spread, spread));
      Var ctx = tape.constant(random_tensor(d, n, rng_, -spread, spread));
      std::vector<Tensor> weights;
      for (Var w : model::mgca(b, q, ctx, att).weights) weights.push_back(w.value());
      weights.push_back(model::gated_attention_pool(b, ctx, pool).weights.value());
      for (const Tensor& w : weights) {
        for (std::size_t r = 0; r < w.rows(); ++r) {
          double s = 0.0;
          for (std::size_t c = 0; c < w.cols(); ++c) {
            s += w(r, c);
            worst_min = std::min(worst_min, w(r, c));
          }
          worst_sum = std::max(worst_sum, std::abs(s - 1.0));
        }
      }
    }
    std::ostringstream os;
    os << options_.simplex_trials << " trials, max |row sum - 1| " << worst_sum << ", min weight " << worst_min;
    add("simplex:attention_and_pooling", worst_sum <= 1e-12 && worst_min >= 0.0, os.str());
  }

  void permutation_check() {
    model::MgctModel net(small_config(), rng_.bits());
    dataio::BagSample sample = small_sample(12);
    auto embedding = [&](const dataio::BagSample& s) {
      nk::Tape tape;
      nk::ParamBinder b(tape);
      return net.fused_embedding(b, s).value();
    };
    const Tensor reference = embedding(sample);
    double worst = 0.0;
    std::vector<std::size_t> perm(sample.patches.cols());
    for (std::size_t trial = 0; trial < options_.permutation_trials; ++trial) {
      std::iota(perm.begin(), perm.end(), 0);
      rng_.shuffle(perm);
      dataio::BagSample shuffled = sample;
      for (std::size_t c = 0; c < perm.size(); ++c) {
        for (std::size_t r = 0; r < sample.patches.rows(); ++r) shuffled.patches(r, c) = sample.patches(r, perm[c]);
      }
      worst = std::max(worst, nk::max_abs_diff(embedding(shuffled), reference));
    }
    std::ostringstream os;
    os << options_.permutation_trials << " permutations, max |diff| " << worst;
    add("permutation:patch_order", worst < 1e-9, os.str());
  }

  VerifyOptions options_;
  nk::Rng rng_;
  nk::GradCheckOptions grad_options_;
  std::vector<CheckResult> results_;
};

}  // namespace

std::vector<CheckResult> run_suite(const VerifyOptions& options) { return Suite(options).run(); }

}  // namespace mgct::verify
