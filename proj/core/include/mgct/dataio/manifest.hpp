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
#include <vector>

namespace mgct::dataio {

/// One manifest row. Paths are kept exactly as written; resolve them
/// against the manifest's directory with `resolve_path`.
struct ManifestRow {
  std::string sample_id;
  std::string bag_path;
  double t_months = 0.0;
  int event = 0;
  std::string genomic_path;

  friend bool operator==(const ManifestRow&, const ManifestRow&) = default;
};

inline constexpr const char* kManifestHeader = "sample_id,bag_path,t_months,event,genomic_path";

// Validates every row (t > 0, event in {0,1}, unique non-empty ids). Errors
// name the file and 1-based data row. Bag and genomic files are not opened.
std::vector<ManifestRow> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const std::vector<ManifestRow>& rows);

std::filesystem::path resolve_path(const std::filesystem::path& base_dir, const std::string& path);

}  // namespace mgct::dataio
