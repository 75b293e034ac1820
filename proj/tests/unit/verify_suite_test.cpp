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

#include <set>

#include <gtest/gtest.h>

namespace mgct::verify {
namespace {

std::set<std::string> failures(const std::vector<CheckResult>& results) {
  std::set<std::string> out;
  for (const auto& r : results) {
    if (!r.passed) out.insert(r.name);
  }
  return out;
}

TEST(VerifySuite, CleanBuildPassesEverything) {
  const auto results = run_suite({.fault = numkit::GradientFault::kNone, .seed = 1, .simplex_trials = 50,
                                  .permutation_trials = 5});
  EXPECT_GE(results.size(), 20u);
  for (const auto& r : results) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
}

TEST(VerifySuite, InjectedTanhFaultIsCaught) {
  const auto results = run_suite({.fault = numkit::GradientFault::kTanhSign, .seed = 1, .simplex_trials = 10,
                                  .permutation_trials = 2});
  const auto failed = failures(results);
  EXPECT_TRUE(failed.contains("gradient:tanh"));
  EXPECT_TRUE(failed.contains("gradient:model_e"));
  EXPECT_FALSE(failed.contains("gradient:sigmoid"));
  EXPECT_FALSE(failed.contains("simplex:attention_and_pooling"));
}

}  // namespace
}  // namespace mgct::verify
