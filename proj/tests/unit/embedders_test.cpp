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

#include "mgct/embed/embedders.hpp"

#include <gtest/gtest.h>

#include "mgct/errors.hpp"
#include "test_support.hpp"

namespace mgct::embed {
namespace {

using numkit::Tensor;

std::vector<std::vector<double>> random_genomics(const std::vector<std::size_t>& lengths, numkit::Rng& rng) {
  std::vector<std::vector<double>> raw;
  for (std::size_t len : lengths) {
    std::vector<double> g(len);
    for (auto& x : g) x = rng.normal();
    raw.push_back(std::move(g));
  }
  return raw;
}

Tensor genomic_tokens(const std::vector<std::vector<double>>& raw, const SnnParams& p, const DropoutContext& dc) {
  numkit::Tape tape;
  numkit::ParamBinder b(tape);
  return embed_genomics(b, raw, p, dc).value();
}

const std::vector<std::size_t> kLengths = {5, 3, 8, 2, 6, 4};

TEST(Embedders, ZeroParametersGiveZeroTokens) {
  numkit::Rng rng(1);
  SnnParams p = init_snn(kLengths, 16, 8, rng);
  numkit::ParamList params;
  collect("snn", p, params);
  for (auto& np : params) np.tensor->fill(0.0);
  const Tensor g = genomic_tokens(random_genomics(kLengths, rng), p, {});
  EXPECT_EQ(g, Tensor(8, 6));
}

TEST(Embedders, SixCategoriesAtWidth64) {
  numkit::Rng rng(2);
  const SnnParams p = init_snn(kLengths, kDefaultSnnHidden, 64, rng);
  EXPECT_EQ(genomic_tokens(random_genomics(kLengths, rng), p, {}).shape(), (numkit::Shape{64, 6}));
  EXPECT_EQ(p.categories[0].w1.shape(), (numkit::Shape{256, 5}));
  EXPECT_EQ(p.categories[0].w2.shape(), (numkit::Shape{256, 256}));
}

TEST(Embedders, ZeroDropoutMatchesEval) {
  numkit::Rng rng(3);
  const SnnParams p = init_snn(kLengths, 16, 8, rng);
  const auto raw = random_genomics(kLengths, rng);
  EXPECT_EQ(genomic_tokens(raw, p, {.training = true, .rate = 0.0, .seed = 4, .step = 9}),
            genomic_tokens(raw, p, {.training = false, .rate = 0.25, .seed = 0, .step = 0}));
  EXPECT_NE(genomic_tokens(raw, p, {.training = true, .rate = 0.25, .seed = 4, .step = 9}),
            genomic_tokens(raw, p, {}));
}

TEST(Embedders, ColumnDependsOnlyOnItsCategory) {
  numkit::Rng rng(4);
  const SnnParams p = init_snn(kLengths, 16, 8, rng);
  const auto raw = random_genomics(kLengths, rng);
  for (bool training : {false, true}) {
    const DropoutContext dc{.training = training, .rate = 0.25, .seed = 5, .step = 2};
    const Tensor full = genomic_tokens(raw, p, dc);
    for (std::size_t s = 0; s < kLengths.size(); ++s) {
      auto masked = raw;
      for (std::size_t o = 0; o < masked.size(); ++o) {
        if (o != s) std::fill(masked[o].begin(), masked[o].end(), 0.0);
      }
      EXPECT_EQ(genomic_tokens(masked, p, dc).col(s), full.col(s)) << "category " << s;
    }
  }
}

TEST(Embedders, LengthMismatchIsShapeError) {
  numkit::Rng rng(5);
  const SnnParams p = init_snn(kLengths, 8, 4, rng);
  auto raw = random_genomics(kLengths, rng);
  raw[2].push_back(1.0);
  EXPECT_THROW(genomic_tokens(raw, p, {}), ShapeError);
  raw.pop_back();
  EXPECT_THROW(genomic_tokens(raw, p, {}), ShapeError);
}

TEST(Embedders, PatchProjectionIdentityAndShapes) {
  numkit::Rng rng(6);
  PatchProjParams p = init_patch_projection(5, 5, rng);
  p.weight = Tensor::identity(5);
  numkit::Tape tape;
  numkit::ParamBinder b(tape);
  const Tensor x = testing::random_tensor(5, 7, rng);
  EXPECT_EQ(embed_patches(b, tape.constant(x), p).value(), x);
  EXPECT_EQ(embed_patches(b, tape.constant(testing::random_tensor(5, 1, rng)), p).cols(), 1u);
  EXPECT_THROW(embed_patches(b, tape.constant(Tensor(4, 2)), p), ShapeError);
}

TEST(Embedders, PatchProjectionIsPermutationEquivariant) {
  numkit::Rng rng(7);
  const PatchProjParams p = init_patch_projection(6, 4, rng);
  const Tensor x = testing::random_tensor(6, 9, rng);
  numkit::Tape tape;
  numkit::ParamBinder b(tape);
  const Tensor y = embed_patches(b, tape.constant(x), p).value();
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::size_t> perm(9);
    for (std::size_t i = 0; i < 9; ++i) perm[i] = i;
    rng.shuffle(perm);
    Tensor xp(6, 9);
    for (std::size_t c = 0; c < 9; ++c) {
      for (std::size_t r = 0; r < 6; ++r) xp(r, c) = x(r, perm[c]);
    }
    const Tensor yp = embed_patches(b, tape.constant(xp), p).value();
    for (std::size_t c = 0; c < 9; ++c) EXPECT_EQ(yp.col(c), y.col(perm[c]));
  }
}

TEST(Embedders, GradientsAtFullHiddenWidth) {
  numkit::Rng rng(8);
  SnnParams snn = init_snn(kLengths, kDefaultSnnHidden, 16, rng);
  PatchProjParams proj = init_patch_projection(6, 16, rng);
  const auto raw = random_genomics(kLengths, rng);
  const Tensor patches = testing::random_tensor(6, 5, rng);
  const Tensor mix = testing::random_tensor(16, 6 + 5, rng);
  numkit::ParamList params;
  collect("snn", snn, params);
  collect("proj", proj, params);
  numkit::LossFn loss = [&](numkit::ParamBinder& b) {
    const DropoutContext dc{.training = true, .rate = 0.25, .seed = 1, .step = 3};
    numkit::Var g = embed_genomics(b, raw, snn, dc);
    numkit::Var h = embed_patches(b, b.tape().constant(patches), proj);
    numkit::Var all = numkit::concat(g, h, numkit::Axis::kCols);
    return numkit::sum(numkit::hadamard(all, b.tape().constant(mix)));
  };
  EXPECT_LT(testing::sampled_gradient_error(loss, params, 400, rng), 1e-4);
}

}  // namespace
}  // namespace mgct::embed
