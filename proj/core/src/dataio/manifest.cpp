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

#include "mgct/dataio/manifest.hpp"

#include <cmath>
#include <unordered_set>

#include "mgct/dataio/csv.hpp"
#include "mgct/errors.hpp"

namespace mgct::dataio {

std::vector<ManifestRow> read_manifest(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  const std::vector<std::string> expected = {"sample_id", "bag_path", "t_months", "event", "genomic_path"};
  if (table.header != expected) {
    throw IngestError(path.string() + ": header must be '" + kManifestHeader + "'");
  }
  std::vector<ManifestRow> rows;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& f = table.rows[i];
    const std::string where = path.string() + " row " + std::to_string(i + 1);
    ManifestRow row;
    row.sample_id = f[0];
    row.bag_path = f[1];
    row.genomic_path = f[4];
    if (row.sample_id.empty()) throw IngestError(where + ": empty sample_id");
    if (!seen.insert(row.sample_id).second) {
      throw IngestError(where + ": duplicate sample_id '" + row.sample_id + "'");
    }
    if (row.bag_path.empty() || row.genomic_path.empty()) throw IngestError(where + ": empty path");
    try {
      row.t_months = parse_double(f[2]);
    } catch (const std::invalid_argument&) {
      throw IngestError(where + ": t_months '" + f[2] + "' is not a number");
    }
    if (!std::isfinite(row.t_months) || row.t_months <= 0.0) {
      throw IngestError(where + ": t_months must be positive and finite, got " + f[2]);
    }
    long long event = -1;
    try {
      event = parse_int(f[3]);
    } catch (const std::invalid_argument&) {
    }
    if (event != 0 && event != 1) throw IngestError(where + ": event must be 0 or 1, got '" + f[3] + "'");
    row.event = static_cast<int>(event);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_manifest(const std::filesystem::path& path, const std::vector<ManifestRow>& rows) {
  CsvTable table;
  table.header = {"sample_id", "bag_path", "t_months", "event", "genomic_path"};
  for (const auto& r : rows) {
    table.rows.push_back({r.sample_id, r.bag_path, format_double(r.t_months), std::to_string(r.event), r.genomic_path});
  }
  write_csv(path, table);
}

std::filesystem::path resolve_path(const std::filesystem::path& base_dir, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p;
  return base_dir / p;
}

}  // namespace mgct::dataio
