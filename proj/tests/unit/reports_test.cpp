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

#include "mgct/train/reports.hpp"

#include <gtest/gtest.h>

namespace mgct::train {
namespace {

TEST(HistoryCsv, SortedByEpochThenFoldWithBlankUndefinedMetrics) {
  const std::vector<EpochMetrics> h = {
      {.epoch = 2, .fold = 0, .c_index = 0.75, .auc = 0.5, .loss = 1.25, .skipped_steps = 0},
      {.epoch = 1, .fold = 1, .c_index = std::nullopt, .auc = std::nullopt, .loss = 2.0, .skipped_steps = 0},
      {.epoch = 1, .fold = 0, .c_index = 0.5, .auc = 0.625, .loss = 3.5, .skipped_steps = 0},
  };
  EXPECT_EQ(history_csv(h), std::string(kHistoryHeader) + "\n1,0,0.5,0.625,3.5\n1,1,,,2\n2,0,0.75,0.5,1.25\n");
}

TEST(KmCsv, OneRowPerPoint) {
  const std::vector<survival::KmPoint> c = {{0.0, 1.0, 3, 0, 0}, {2.5, 0.5, 3, 1, 1}};
  EXPECT_EQ(km_csv(c), "time,survival,at_risk,events,censored\n0,1,3,0,0\n2.5,0.5,3,1,1\n");
}

TEST(AblationCsv, FlagsAndSummaries) {
  AblationRow row;
  row.model = 'C';
  row.spec = model::ablation_preset('C');
  row.parameter_count = 1234;
  row.result.c_index = {.mean = 0.75, .std = 0.25, .folds = 2};
  row.result.folds.resize(3);
  EXPECT_EQ(ablation_csv({row}),
            "model,deep_fusion,mgca,gap,feedforward,c_index_mean,c_index_std,auc_mean,auc_std,folds,failed_folds,"
            "parameters\nC,1,1,0,0,0.75,0.25,,,3,3,1234\n");
}

}  // namespace
}  // namespace mgct::train
