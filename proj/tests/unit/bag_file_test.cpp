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

#include "mgct/dataio/bag_file.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "mgct/errors.hpp"
#include "test_support.hpp"

namespace mgct::dataio {
namespace {

std::vector<std::uint8_t> handmade_bag(std::uint32_t d_in, std::uint32_t n, std::size_t floats) {
  std::vector<std::uint8_t> bytes = {'M', 'G', 'C', 'B'};
  auto put = [&](std::uint32_t v) {
    for (int k = 0; k < 4; ++k) bytes.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
  };
  put(d_in);
  put(n);
  put(0);
  for (std::size_t i = 0; i < floats; ++i) {
    const float f = static_cast<float>(i);
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    put(bits);
  }
  return bytes;
}

TEST(BagFile, DecodesDeclaredShapeColumnMajor) {
  const auto t = decode_bag(handmade_bag(8, 5, 40), "mem");
  ASSERT_EQ(t.rows(), 8u);
  ASSERT_EQ(t.cols(), 5u);
  EXPECT_EQ(t(0, 0), 0.0);
  EXPECT_EQ(t(1, 0), 1.0);  // features of a patch are contiguous
  EXPECT_EQ(t(0, 1), 8.0);
  EXPECT_EQ(t(7, 4), 39.0);
}

TEST(BagFile, RejectsMalformedInput) {
  EXPECT_THROW(decode_bag(handmade_bag(8, 5, 39), "mem"), FormatError);
  EXPECT_THROW(decode_bag(handmade_bag(8, 5, 41), "mem"), FormatError);
  EXPECT_THROW(decode_bag(handmade_bag(0, 5, 0), "mem"), FormatError);
  auto bad_magic = handmade_bag(2, 1, 2);
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_bag(bad_magic, "mem"), FormatError);
  auto nan = handmade_bag(2, 1, 2);
  const float q = std::nanf("");
  std::memcpy(nan.data() + 16, &q, 4);
  EXPECT_THROW(decode_bag(nan, "mem"), FormatError);
  EXPECT_THROW(decode_bag(std::vector<std::uint8_t>(10, 0), "mem"), FormatError);
}

TEST(BagFile, WriteReadIsBitwiseIdentity) {
  testing::TempDir dir("bag");
  numkit::Rng rng(3);
  numkit::Tensor t(6, 9);
  for (auto& v : t.data()) v = static_cast<float>(rng.normal());
  write_bag(dir / "b.mgcb", t);
  EXPECT_EQ(read_bag(dir / "b.mgcb"), t);
  const std::string first = testing::slurp(dir / "b.mgcb");
  EXPECT_EQ(first.size(), kBagHeaderBytes + 4 * t.size());
  write_bag(dir / "c.mgcb", read_bag(dir / "b.mgcb"));
  EXPECT_EQ(testing::slurp(dir / "c.mgcb"), first);
  EXPECT_THROW(read_bag(dir / "missing.mgcb"), FormatError);
}

}  // namespace
}  // namespace mgct::dataio
