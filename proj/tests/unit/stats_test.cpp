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

#include "mgct/survival/stats.hpp"

#include <cmath>

#include <gtest/gtest.h>

namespace mgct::survival {
namespace {

TEST(RegularizedGamma, ClosedForms) {
  for (double x : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0, 60.0}) {
    EXPECT_NEAR(regularized_gamma_q(1.0, x), std::exp(-x), 1e-14) << x;
    EXPECT_NEAR(regularized_gamma_q(2.0, x), (1.0 + x) * std::exp(-x), 1e-14) << x;
    EXPECT_NEAR(regularized_gamma_q(0.5, x), std::erfc(std::sqrt(x)), 1e-14) << x;
  }
}

TEST(ChiSquare, OneAndTwoDegrees) {
  for (double x : {0.0, 0.01, 0.3, 1.0, 3.841458820694124, 6.0, 15.0, 40.0}) {
    EXPECT_NEAR(chi_square_sf(x, 1.0), std::erfc(std::sqrt(x / 2.0)), 1e-14) << x;
    EXPECT_NEAR(chi_square_sf(x, 2.0), std::exp(-x / 2.0), 1e-14) << x;
  }
  EXPECT_NEAR(chi_square_sf(3.841458820694124, 1.0), 0.05, 1e-12);
}

TEST(Ranks, MidranksForTies) {
  const std::vector<double> v = {10, 30, 20, 30, 10, 40};
  EXPECT_EQ(ranks(v), (std::vector<double>{1.5, 4.5, 3, 4.5, 1.5, 6}));
}

TEST(Correlation, KnownValues) {
  const std::vector<double> a = {1, 2, 3, 4, 5};
  const std::vector<double> b = {2, 4, 6, 8, 10};
  const std::vector<double> c = {25, 16, 9, 4, 1};
  EXPECT_NEAR(pearson(a, b), 1.0, 1e-15);
  EXPECT_NEAR(spearman(a, c), -1.0, 1e-15);
  // Pearson of (1..5) with squares: sum of centered cross products 60 over sqrt(10 * 374).
  const std::vector<double> sq = {1, 4, 9, 16, 25};
  EXPECT_NEAR(pearson(a, sq), 60.0 / std::sqrt(10.0 * 374.0), 1e-14);
  EXPECT_NEAR(spearman(a, sq), 1.0, 1e-15);
}

}  // namespace
}  // namespace mgct::survival
