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

#include "mgct/dataio/dataset.hpp"

#include <cmath>
#include <unordered_set>

#include "mgct/dataio/bag_file.hpp"
#include "mgct/dataio/csv.hpp"
#include "mgct/dataio/manifest.hpp"
#include "mgct/errors.hpp"

namespace mgct::dataio {

std::vector<std::string> Dataset::ids() const {
  std::vector<std::string> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.sample_id);
  return out;
}

void validate(const Dataset& dataset) {
  const auto lengths = dataset.categories.lengths();
  std::unordered_set<std::string> seen;
  const std::size_t width = dataset.feature_width();
  for (const auto& s : dataset.samples) {
    const std::string who = "sample '" + s.sample_id + "'";
    if (s.sample_id.empty()) throw IngestError("sample with empty id");
    if (!seen.insert(s.sample_id).second) throw IngestError(who + ": duplicate id");
    if (s.patches.cols() == 0 || s.patches.rows() == 0) throw IngestError(who + ": empty bag");
    if (s.patches.rows() != width) {
      throw IngestError(who + ": bag width " + std::to_string(s.patches.rows()) + " differs from " +
                        std::to_string(width));
    }
    if (!s.patches.all_finite()) throw IngestError(who + ": non-finite patch value");
    if (!(s.t_months > 0.0) || !std::isfinite(s.t_months)) throw IngestError(who + ": survival time must be > 0");
    if (s.event != 0 && s.event != 1) throw IngestError(who + ": event must be 0 or 1");
    if (s.genomic.size() != lengths.size()) {
      throw IngestError(who + ": expected " + std::to_string(lengths.size()) + " genomic categories, found " +
                        std::to_string(s.genomic.size()));
    }
    for (std::size_t c = 0; c < lengths.size(); ++c) {
      if (s.genomic[c].size() != lengths[c]) {
        throw IngestError(who + ": category '" + dataset.categories.categories()[c].name + "' has " +
                          std::to_string(s.genomic[c].size()) + " values, expected " + std::to_string(lengths[c]));
      }
    }
  }
}

Dataset load_dataset(const std::filesystem::path& manifest, const std::filesystem::path& categories) {
  const auto base = manifest.parent_path();
  Dataset ds;
  ds.categories = read_category_map(categories.empty() ? base / "categories.json" : categories);
  const auto rows = read_manifest(manifest);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::string where = manifest.string() + " row " + std::to_string(i + 1);
    BagSample s;
    s.sample_id = r.sample_id;
    s.t_months = r.t_months;
    s.event = r.event;
    try {
      s.patches = read_bag(resolve_path(base, r.bag_path));
      s.genomic = group_genomics(read_gene_table(resolve_path(base, r.genomic_path)), ds.categories);
    } catch (const std::exception& e) {
      throw IngestError(where + ": " + e.what());
    }
    ds.samples.push_back(std::move(s));
  }
  if (ds.samples.empty()) throw IngestError(manifest.string() + ": manifest has no rows");
  validate(ds);
  return ds;
}

void write_dataset(const std::filesystem::path& dir, const Dataset& dataset) {
  validate(dataset);
  std::filesystem::create_directories(dir / "bags");
  std::filesystem::create_directories(dir / "genomics");
  write_category_map(dir / "categories.json", dataset.categories);
  std::vector<ManifestRow> rows;
  CsvTable truth;
  truth.header = {"sample_id", "risk"};
  for (const auto& s : dataset.samples) {
    const std::string bag = "bags/" + s.sample_id + ".mgcb";
    const std::string genes = "genomics/" + s.sample_id + ".csv";
    write_bag(dir / bag, s.patches);
    GeneTable table;
    const auto& cats = dataset.categories.categories();
    for (std::size_t c = 0; c < cats.size(); ++c) {
      for (std::size_t g = 0; g < cats[c].genes.size(); ++g) table.emplace_back(cats[c].genes[g], s.genomic[c][g]);
    }
    write_gene_table(dir / genes, table);
    rows.push_back({s.sample_id, bag, s.t_months, s.event, genes});
    if (s.true_risk) truth.rows.push_back({s.sample_id, format_double(*s.true_risk)});
  }
  write_manifest(dir / "manifest.csv", rows);
  if (!truth.rows.empty()) write_csv(dir / "ground_truth.csv", truth);
}

}  // namespace mgct::dataio
