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

#include <fstream>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "mgct/dataio/csv.hpp"
#include "mgct/errors.hpp"

namespace mgct::dataio {
namespace {

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

}  // namespace

CategoryMap::CategoryMap(std::vector<Category> categories) : categories_(std::move(categories)) {
  if (categories_.empty()) throw ContractError("category map has no categories");
  std::unordered_map<std::string, std::string> owner;
  for (const auto& c : categories_) {
    if (c.genes.empty()) throw ContractError("category '" + c.name + "' has no genes");
    for (const auto& g : c.genes) {
      auto [it, inserted] = owner.emplace(g, c.name);
      if (!inserted) {
        throw ContractError("gene '" + g + "' is listed under both '" + it->second + "' and '" + c.name + "'");
      }
    }
  }
}

std::vector<std::size_t> CategoryMap::lengths() const {
  std::vector<std::size_t> out;
  for (const auto& c : categories_) out.push_back(c.genes.size());
  return out;
}

const std::vector<std::string>& default_category_names() {
  static const std::vector<std::string> names = {
      "Tumor Suppression",        "Oncogenesis",   "Protein Kinases",
      "Cellular Differentiation", "Transcription", "Cytokines and Growth",
  };
  return names;
}

CategoryMap read_category_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError(path.string() + ": cannot open category map");
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IngestError(path.string() + ": invalid JSON: " + e.what());
  }
  if (!doc.is_object()) throw IngestError(path.string() + ": category map must be a JSON object");
  std::vector<CategoryMap::Category> cats;
  for (const auto& [name, genes] : doc.items()) {
    if (!genes.is_array()) throw IngestError(path.string() + ": category '" + name + "' must map to an array");
    CategoryMap::Category c{name, {}};
    for (const auto& g : genes) {
      if (!g.is_string()) throw IngestError(path.string() + ": category '" + name + "' has a non-string gene");
      c.genes.push_back(g.get<std::string>());
    }
    cats.push_back(std::move(c));
  }
  try {
    return CategoryMap(std::move(cats));
  } catch (const ContractError& e) {
    throw IngestError(path.string() + ": " + e.what());
  }
}

void write_category_map(const std::filesystem::path& path, const CategoryMap& map) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& c : map.categories()) doc[c.name] = c.genes;
  write_file_atomic(path, doc.dump(2) + "\n");
}

GeneTable read_gene_table(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  if (table.header != std::vector<std::string>{"gene", "value"}) {
    throw IngestError(path.string() + ": header must be 'gene,value'");
  }
  GeneTable out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& f = table.rows[i];
    double v = 0.0;
    try {
      v = parse_double(f[1]);
    } catch (const std::invalid_argument&) {
      throw IngestError(path.string() + " row " + std::to_string(i + 1) + ": value '" + f[1] + "' is not a number");
    }
    if (!std::isfinite(v)) {
      throw IngestError(path.string() + " row " + std::to_string(i + 1) + ": non-finite value for gene " + f[0]);
    }
    out.emplace_back(f[0], v);
  }
  return out;
}

void write_gene_table(const std::filesystem::path& path, const GeneTable& table) {
  CsvTable csv;
  csv.header = {"gene", "value"};
  for (const auto& [gene, value] : table) csv.rows.push_back({gene, format_double(value)});
  write_csv(path, csv);
}

std::vector<std::vector<double>> group_genomics(const GeneTable& table, const CategoryMap& map) {
  std::unordered_set<std::string> mapped;
  for (const auto& c : map.categories()) mapped.insert(c.genes.begin(), c.genes.end());

  std::unordered_map<std::string, double> values;
  std::vector<std::string> unmapped;
  std::vector<std::string> duplicated;
  for (const auto& [gene, value] : table) {
    if (!mapped.contains(gene)) {
      unmapped.push_back(gene);
      continue;
    }
    if (!values.emplace(gene, value).second) duplicated.push_back(gene);
  }
  if (!unmapped.empty()) throw IngestError("genes not in category map: " + join(unmapped));
  if (!duplicated.empty()) throw IngestError("genes listed more than once: " + join(duplicated));

  std::vector<std::vector<double>> grouped;
  std::vector<std::string> missing;
  for (const auto& c : map.categories()) {
    std::vector<double> v;
    for (const auto& g : c.genes) {
      auto it = values.find(g);
      if (it == values.end()) {
        missing.push_back(g);
      } else {
        v.push_back(it->second);
      }
    }
    grouped.push_back(std::move(v));
  }
  if (!missing.empty()) throw IngestError("genes missing from table: " + join(missing));
  return grouped;
}

}  // namespace mgct::dataio
