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

#include "mgct/dataio/genomics.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "mgct/errors.hpp"
#include "test_support.hpp"

namespace mgct::dataio {
namespace {

CategoryMap six_by_one() {
  std::vector<CategoryMap::Category> cats;
  for (std::size_t c = 0; c < 6; ++c) cats.push_back({default_category_names()[c], {"gene" + std::to_string(c)}});
  return CategoryMap(cats);
}

TEST(Genomics, SixGenesIntoSixCategories) {
  const auto map = six_by_one();
  GeneTable table;
  for (int g = 5; g >= 0; --g) table.push_back({"gene" + std::to_string(g), g * 1.5});
  const auto grouped = group_genomics(table, map);
  ASSERT_EQ(grouped.size(), 6u);
  for (std::size_t c = 0; c < 6; ++c) EXPECT_EQ(grouped[c], std::vector<double>{c * 1.5});
}

TEST(Genomics, ContractViolations) {
  EXPECT_THROW(CategoryMap(std::vector<CategoryMap::Category>{}), ContractError);
  EXPECT_THROW(CategoryMap({{"a", {"g1"}}, {"b", {}}}), ContractError);
  EXPECT_THROW(CategoryMap({{"a", {"g1"}}, {"b", {"g1"}}}), ContractError);
}

TEST(Genomics, UnmappedMissingAndDuplicateGenesAreListed) {
  const CategoryMap map({{"a", {"g1", "g2"}}, {"b", {"g3"}}});
  try {
    group_genomics({{"g1", 1}, {"zz", 2}, {"yy", 3}, {"g2", 1}, {"g3", 1}}, map);
    FAIL();
  } catch (const IngestError& e) {
    EXPECT_NE(std::string(e.what()).find("zz"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("yy"), std::string::npos);
  }
  EXPECT_THROW(group_genomics({{"g1", 1}, {"g3", 1}}, map), IngestError);
  EXPECT_THROW(group_genomics({{"g1", 1}, {"g1", 2}, {"g2", 1}, {"g3", 1}}, map), IngestError);
}

TEST(Genomics, InputOrderDoesNotMatter) {
  numkit::Rng rng(8);
  std::vector<CategoryMap::Category> cats;
  GeneTable table;
  for (std::size_t c = 0; c < 4; ++c) {
    CategoryMap::Category cat{"cat" + std::to_string(c), {}};
    for (std::size_t g = 0; g <= c + 2; ++g) {
      cat.genes.push_back("c" + std::to_string(c) + "g" + std::to_string(g));
      table.push_back({cat.genes.back(), rng.normal()});
    }
    cats.push_back(cat);
  }
  const CategoryMap map(cats);
  const auto reference = group_genomics(table, map);
  for (int trial = 0; trial < 20; ++trial) {
    GeneTable shuffled = table;
    rng.shuffle(shuffled);
    const auto grouped = group_genomics(shuffled, map);
    EXPECT_EQ(grouped, reference);
    for (std::size_t c = 0; c < grouped.size(); ++c) {
      auto a = grouped[c], b = reference[c];
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      EXPECT_EQ(a, b);
    }
  }
}

TEST(Genomics, FilesRoundTripPreservingCategoryOrder) {
  testing::TempDir dir("genomics");
  const CategoryMap map({{"zeta", {"z1", "z2"}}, {"alpha", {"a1"}}, {"mid", {"m1"}}});
  write_category_map(dir / "c.json", map);
  EXPECT_EQ(read_category_map(dir / "c.json"), map);
  const GeneTable table = {{"z1", 0.1}, {"a1", -2.5e-7}, {"m1", 3.0}, {"z2", 1e10}};
  write_gene_table(dir / "g.csv", table);
  EXPECT_EQ(read_gene_table(dir / "g.csv"), table);
  testing::spit(dir / "bad.json", "{\"a\": \"not-a-list\"}");
  EXPECT_THROW(read_category_map(dir / "bad.json"), IngestError);
  testing::spit(dir / "bad.csv", "gene,value\ng1,abc\n");
  EXPECT_THROW(read_gene_table(dir / "bad.csv"), IngestError);
}

}  // namespace
}  // namespace mgct::dataio
