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

#include "mgct/train/trainer.hpp"

#include <cmath>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "mgct/errors.hpp"
#include "mgct/model/checkpoint.hpp"
#include "mgct/survival/metrics.hpp"
#include "test_support.hpp"

namespace mgct::train {
namespace {

using numkit::Tensor;

TEST(GradientAccumulator, MeanMatchesBatchLossOnOneTape) {
  const dataio::Dataset data = testing::small_cohort(12);
  const TrainConfig cfg = testing::small_train_config();
  model::MgctModel net(model_config(data, cfg, model::ablation_preset('E')), 5);
  const numkit::ParamList params = net.params();
  std::vector<survival::Outcome> outcomes;
  for (const auto& s : data.samples) outcomes.push_back({s.t_months, s.event});
  const auto bins = survival::quantile_bins(outcomes, 4);
  auto sample_loss = [&](numkit::ParamBinder& b, std::size_t i) {
    const auto& s = data.samples[i];
    const model::ForwardOptions fwd{.training = true, .seed = 9, .step = i, .trace = nullptr};
    return survival::nll_loss(net.forward(b, s, fwd), bins.label({s.t_months, s.event}));
  };

  GradientAccumulator acc(params);
  for (std::size_t i = 0; i < 12; ++i) {
    numkit::Tape tape;
    numkit::ParamBinder b(tape);
    acc.add(b, tape.backward(sample_loss(b, i)));
  }
  EXPECT_EQ(acc.pending(), 12u);
  const auto mean = acc.take_mean();
  EXPECT_EQ(acc.pending(), 0u);

  numkit::Tape tape;
  numkit::ParamBinder b(tape);
  numkit::Var total = sample_loss(b, 0);
  for (std::size_t i = 1; i < 12; ++i) total = numkit::add(total, sample_loss(b, i));
  const auto grads = tape.backward(numkit::scale(total, 1.0 / 12.0));
  for (std::size_t p = 0; p < params.size(); ++p) {
    EXPECT_LT(numkit::max_abs_diff(mean[p], b.grad_of(*params[p].tensor, grads)), 1e-12) << params[p].name;
  }
  EXPECT_THROW(acc.take_mean(), ContractError);
}

TEST(TrainConfig, Validation) {
  TrainConfig c;
  c.validate();
  c.accumulation = 0;
  EXPECT_THROW(c.validate(), ContractError);
  c = {};
  c.lr = 0.0;
  EXPECT_THROW(c.validate(), ContractError);
  c = {};
  c.weight_decay = -1.0;
  EXPECT_THROW(c.validate(), ContractError);
  c = {};
  c.loss.alpha = 1.5;
  EXPECT_THROW(c.validate(), ContractError);
}

TEST(TrainFold, HistoryBinsAndHorizon) {
  const dataio::Dataset data = testing::small_cohort(30);
  const auto split = testing::split_of(data, 24);
  const FoldResult r = train_fold(data, split, testing::small_train_config(3), model::ablation_preset('E'));
  ASSERT_EQ(r.history.size(), 3u);
  std::optional<double> best;
  std::size_t best_epoch = 0;
  for (std::size_t e = 0; e < 3; ++e) {
    EXPECT_EQ(r.history[e].epoch, e + 1);
    EXPECT_TRUE(std::isfinite(r.history[e].loss));
    EXPECT_EQ(r.history[e].skipped_steps, 0u);
    ASSERT_TRUE(r.history[e].c_index.has_value());
    if (!best || *r.history[e].c_index > *best) {
      best = r.history[e].c_index;
      best_epoch = e + 1;
    }
  }
  EXPECT_EQ(r.best_epoch, best_epoch);

  std::vector<survival::Outcome> train_outcomes;
  std::vector<double> event_times;
  for (std::size_t i = 0; i < 24; ++i) {
    train_outcomes.push_back({data.samples[i].t_months, data.samples[i].event});
    if (data.samples[i].event == 1) event_times.push_back(data.samples[i].t_months);
  }
  EXPECT_EQ(r.bins.inner(), survival::quantile_bins(train_outcomes, 4).inner());
  EXPECT_EQ(r.auc_horizon, survival::quantile(event_times, 0.5));
  EXPECT_TRUE(r.incidents.empty());
}

TEST(TrainFold, RepeatRunsAreBitwiseIdentical) {
  const dataio::Dataset data = testing::small_cohort(20);
  const auto split = testing::split_of(data, 15);
  const TrainConfig cfg = testing::small_train_config(2);
  FoldResult a = train_fold(data, split, cfg, model::ablation_preset('E'));
  FoldResult b = train_fold(data, split, cfg, model::ablation_preset('E'));
  EXPECT_EQ(model::encode_checkpoint(a.model, 1), model::encode_checkpoint(b.model, 1));
  for (std::size_t e = 0; e < 2; ++e) {
    EXPECT_EQ(a.history[e].loss, b.history[e].loss);
    EXPECT_EQ(a.history[e].c_index, b.history[e].c_index);
  }
}

TEST(TrainFold, PartialBatchIsFlushedAtEpochEnd) {
  const dataio::Dataset data = testing::small_cohort(12);
  const auto split = testing::split_of(data, 10);
  TrainConfig cfg = testing::small_train_config(1);
  cfg.accumulation = 10;
  FoldResult exact = train_fold(data, split, cfg, model::ablation_preset('E'));
  cfg.accumulation = 32;
  FoldResult partial = train_fold(data, split, cfg, model::ablation_preset('E'));
  EXPECT_EQ(model::encode_checkpoint(exact.model, 0), model::encode_checkpoint(partial.model, 0));
  cfg.accumulation = 1;
  FoldResult per_sample = train_fold(data, split, cfg, model::ablation_preset('E'));
  EXPECT_NE(model::encode_checkpoint(exact.model, 0), model::encode_checkpoint(per_sample.model, 0));
}

TEST(TrainFold, DifferentFoldsStartFromDifferentWeights) {
  const dataio::Dataset data = testing::small_cohort(12);
  TrainConfig cfg = testing::small_train_config(0);
  FoldResult f0 = train_fold(data, testing::split_of(data, 10, 0), cfg, model::ablation_preset('E'));
  FoldResult f1 = train_fold(data, testing::split_of(data, 10, 1), cfg, model::ablation_preset('E'));
  EXPECT_NE(model::encode_checkpoint(f0.model, 0), model::encode_checkpoint(f1.model, 0));
}

TEST(TrainFold, NonFiniteGradientSkipsTheStep) {
  dataio::Dataset data = testing::small_cohort(6);
  TrainConfig cfg = testing::small_train_config(2);
  cfg.accumulation = 1;
  FoldResult untrained = train_fold(data, testing::split_of(data, 3), testing::small_train_config(0),
                                    model::ablation_preset('E'));
  for (std::size_t i = 0; i < 3; ++i) data.samples[i].patches(0, 0) = std::nan("");
  FoldResult r = train_fold(data, testing::split_of(data, 3), cfg, model::ablation_preset('E'));
  EXPECT_EQ(r.history[0].skipped_steps, 3u);
  EXPECT_EQ(r.history[1].skipped_steps, 3u);
  EXPECT_EQ(r.incidents.size(), 6u);
  EXPECT_EQ(model::encode_checkpoint(r.model, 0), model::encode_checkpoint(untrained.model, 0));
}

TEST(TrainFold, RejectsUnknownIdsAndEmptyTraining) {
  const dataio::Dataset data = testing::small_cohort(6);
  dataio::FoldSplit bad = testing::split_of(data, 3);
  bad.train_ids.push_back("nobody");
  EXPECT_THROW(train_fold(data, bad, testing::small_train_config(1), model::ablation_preset('A')), ContractError);
  EXPECT_THROW(train_fold(data, testing::split_of(data, 0), testing::small_train_config(1),
                          model::ablation_preset('A')),
               ContractError);
}

TEST(Evaluate, RisksMatchForwardPass) {
  const dataio::Dataset data = testing::small_cohort(10);
  const model::MgctModel net(model_config(data, testing::small_train_config(), model::ablation_preset('C')), 2);
  const std::vector<std::size_t> idx = {7, 1, 4, 0, 9};
  const Evaluation ev = evaluate(net, data, idx, 12.0);
  ASSERT_EQ(ev.risks.size(), 5u);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    numkit::Tape tape;
    numkit::ParamBinder b(tape);
    EXPECT_EQ(ev.risks[k], survival::predict(net.forward(b, data.samples[idx[k]]).value()).risk);
    EXPECT_EQ(ev.outcomes[k].t, data.samples[idx[k]].t_months);
  }
  EXPECT_EQ(ev.c_index, survival::concordance_index(ev.risks, ev.outcomes));
}

TEST(ShuffleLabels, PermutesOutcomesWithinIds) {
  const dataio::Dataset data = testing::small_cohort(20);
  const auto ids = testing::split_of(data, 12).train_ids;
  const dataio::Dataset shuffled = shuffle_labels(data, ids, 4);
  std::multiset<std::pair<double, int>> before, after;
  std::size_t moved = 0;
  for (std::size_t i = 0; i < 20; ++i) {
    const auto& a = data.samples[i];
    const auto& b = shuffled.samples[i];
    EXPECT_EQ(a.sample_id, b.sample_id);
    EXPECT_EQ(a.patches, b.patches);
    if (i < 12) {
      before.insert({a.t_months, a.event});
      after.insert({b.t_months, b.event});
      moved += a.t_months != b.t_months ? 1 : 0;
      EXPECT_FALSE(b.true_risk.has_value());
    } else {
      EXPECT_EQ(a.t_months, b.t_months);
      EXPECT_EQ(a.event, b.event);
    }
  }
  EXPECT_EQ(before, after);
  EXPECT_GT(moved, 0u);
  EXPECT_EQ(shuffle_labels(data, ids, 4).samples[3].t_months, shuffled.samples[3].t_months);
}

TEST(AucHorizon, MedianOfUncensoredTimes) {
  const std::vector<survival::Outcome> o = {{1, 1}, {50, 0}, {3, 1}, {8, 1}, {10, 1}};
  EXPECT_EQ(default_auc_horizon(o), 5.5);
  const std::vector<survival::Outcome> none = {{1, 0}};
  EXPECT_THROW(default_auc_horizon(none), ContractError);
}

}  // namespace
}  // namespace mgct::train
