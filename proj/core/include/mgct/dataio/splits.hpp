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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace mgct::dataio {

struct FoldSplit {
  std::size_t fold = 0;
  std::vector<std::string> train_ids;
  std::vector<std::string> validation_ids;

  friend bool operator==(const FoldSplit&, const FoldSplit&) = default;
};

/// Monte Carlo cross-validation: each fold independently draws
/// floor(ratio * n) validation ids; the rest train. Folds may overlap.
/// Ids keep their input order within each set.
std::vector<FoldSplit> monte_carlo_splits(const std::vector<std::string>& ids, std::size_t folds, double ratio,
                                          std::uint64_t seed);

void write_splits(const std::filesystem::path& path, const std::vector<FoldSplit>& splits);
std::vector<FoldSplit> read_splits(const std::filesystem::path& path);

}  // namespace mgct::dataio
