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

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace mgct::dataio {

/// Ordered genomic functional categories and their member genes.
class CategoryMap {
 public:
  struct Category {
    std::string name;
    std::vector<std::string> genes;

    friend bool operator==(const Category&, const Category&) = default;
  };

  CategoryMap() = default;
  // Throws ContractError on zero categories, an empty category, or a gene
  // listed under more than one category.
  explicit CategoryMap(std::vector<Category> categories);

  std::size_t size() const { return categories_.size(); }
  const std::vector<Category>& categories() const { return categories_; }
  std::vector<std::size_t> lengths() const;

  friend bool operator==(const CategoryMap&, const CategoryMap&) = default;

 private:
  std::vector<Category> categories_;
};

// Category names for the six functional gene families used by default.
const std::vector<std::string>& default_category_names();

// JSON object {category: [genes]}; member order in the file is the category order.
CategoryMap read_category_map(const std::filesystem::path& path);
void write_category_map(const std::filesystem::path& path, const CategoryMap& map);

using GeneTable = std::vector<std::pair<std::string, double>>;

// CSV with header `gene,value`.
GeneTable read_gene_table(const std::filesystem::path& path);
void write_gene_table(const std::filesystem::path& path, const GeneTable& table);

/// Splits a gene table into one vector per category, values ordered as the
/// genes are listed in the map. Throws IngestError naming unmapped,
/// duplicated, or missing genes.
std::vector<std::vector<double>> group_genomics(const GeneTable& table, const CategoryMap& map);

}  // namespace mgct::dataio
