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

#include "mgct/numkit/tensor.hpp"

#include <gtest/gtest.h>

#include "mgct/errors.hpp"
#include "test_support.hpp"

namespace mgct::numkit {
namespace {

Tensor naive_matmul(const Tensor& a, const Tensor& b) {
  Tensor out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  }
  return out;
}

TEST(Tensor, ConstructionAndIndexing) {
  Tensor t(2, 3, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(t.rows(), 2u);
  EXPECT_EQ(t.cols(), 3u);
  EXPECT_EQ(t(1, 0), 4.0);
  EXPECT_EQ(t[5], 6.0);
  EXPECT_EQ(t.transposed()(2, 1), 6.0);
  EXPECT_EQ(t.col(1), Tensor(2, 1, {2, 5}));
  EXPECT_THROW(Tensor(2, 2, {1, 2, 3}), ShapeError);
  EXPECT_THROW(Tensor::from_rows({{1, 2}, {3}}), ShapeError);
}

TEST(Tensor, IdentityTimesMatrixIsMatrix) {
  Rng rng(3);
  const Tensor a = testing::random_tensor(3, 4, rng);
  EXPECT_EQ(matmul(Tensor::identity(3), a), a);
  EXPECT_EQ(matmul(a, Tensor::identity(4)), a);
}

TEST(Tensor, HandComputedProduct) {
  const Tensor out = matmul(Tensor::from_rows({{1, 2}, {3, 4}}), Tensor::from_rows({{1}, {1}}));
  EXPECT_EQ(out, Tensor::from_rows({{3}, {7}}));
}

TEST(Tensor, MismatchNamesBothShapes) {
  try {
    matmul(Tensor(2, 3), Tensor(4, 5));
    FAIL() << "expected ShapeError";
  } catch (const ShapeError& e) {
    EXPECT_NE(std::string(e.what()).find("2x3"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("4x5"), std::string::npos);
  }
}

TEST(Tensor, TransposedKernelsMatchNaiveProduct) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 1 + rng.index(7), k = 1 + rng.index(7), n = 1 + rng.index(7);
    const Tensor a = testing::random_tensor(m, k, rng);
    const Tensor b = testing::random_tensor(k, n, rng);
    EXPECT_LT(max_abs_diff(matmul(a, b), naive_matmul(a, b)), 1e-12);
    EXPECT_LT(max_abs_diff(matmul_tn(a.transposed(), b), naive_matmul(a, b)), 1e-12);
    EXPECT_LT(max_abs_diff(matmul_nt(a, b.transposed()), naive_matmul(a, b)), 1e-12);
  }
}

TEST(Tensor, AddScaledAndFinite) {
  Tensor a(1, 2, {1, 2});
  a.add_scaled(Tensor(1, 2, {1, 1}), 2.0);
  EXPECT_EQ(a, Tensor(1, 2, {3, 4}));
  EXPECT_THROW(a.add_scaled(Tensor(2, 1)), ShapeError);
  EXPECT_TRUE(a.all_finite());
  a(0, 1) = std::nan("");
  EXPECT_FALSE(a.all_finite());
}

}  // namespace
}  // namespace mgct::numkit
