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

#include "mgct/survival/labels.hpp"

#include <gtest/gtest.h>

#include "mgct/errors.hpp"

namespace mgct::survival {
namespace {

TEST(Quantile, LinearInterpolation) {
  EXPECT_EQ(quantile({4.0, 1.0, 3.0, 2.0}, 0.0), 1.0);
  EXPECT_EQ(quantile({4.0, 1.0, 3.0, 2.0}, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(quantile({4.0, 1.0, 3.0, 2.0}, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile({10.0, 20.0}, 0.25), 12.5);
  EXPECT_EQ(quantile({7.0}, 0.3), 7.0);
  EXPECT_THROW(quantile({}, 0.5), ContractError);
}

TEST(QuantileBins, UsesOnlyUncensoredTimes) {
  std::vector<Outcome> o;
  for (int t = 1; t <= 9; ++t) o.push_back({static_cast<double>(t), 1});
  o.push_back({100.0, 0});
  o.push_back({0.5, 0});
  const BinEdges e = quantile_bins(o, 4);
  ASSERT_EQ(e.bins(), 4u);
  EXPECT_EQ(e.inner(), (std::vector<double>{3.0, 5.0, 7.0}));
}

TEST(QuantileBins, Assignment) {
  const BinEdges e({3.0, 5.0, 7.0});
  EXPECT_EQ(e.assign(0.1), 0u);
  EXPECT_EQ(e.assign(2.999), 0u);
  EXPECT_EQ(e.assign(3.0), 1u);
  EXPECT_EQ(e.assign(6.0), 2u);
  EXPECT_EQ(e.assign(7.0), 3u);
  EXPECT_EQ(e.assign(1e9), 3u);
  const SurvivalLabel l = e.label({4.0, 0});
  EXPECT_EQ(l.bin, 1u);
  EXPECT_EQ(l.event, 0);
}

TEST(QuantileBins, Errors) {
  std::vector<Outcome> censored_only = {{1.0, 0}, {2.0, 0}};
  EXPECT_THROW(quantile_bins(censored_only, 4), ContractError);
  std::vector<Outcome> one = {{1.0, 1}};
  EXPECT_THROW(quantile_bins(one, 1), ContractError);
}

}  // namespace
}  // namespace mgct::survival
