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

#include "mgct/dataio/splits.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "mgct/dataio/csv.hpp"
#include "mgct/errors.hpp"
#include "mgct/numkit/rng.hpp"

namespace mgct::dataio {

std::vector<FoldSplit> monte_carlo_splits(const std::vector<std::string>& ids, std::size_t folds, double ratio,
                                          std::uint64_t seed) {
  if (folds == 0) throw ContractError("monte_carlo_splits: need at least one fold");
  if (!(ratio > 0.0 && ratio < 1.0)) throw ContractError("monte_carlo_splits: ratio must be in (0, 1)");
  const auto n_val = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(ids.size())));
  if (n_val == 0 || n_val >= ids.size()) {
    throw ContractError("monte_carlo_splits: " + std::to_string(ids.size()) +
                        " samples cannot give non-empty train and validation sets at ratio " + std::to_string(ratio));
  }
  std::vector<FoldSplit> out;
  for (std::size_t f = 0; f < folds; ++f) {
    numkit::Rng rng(numkit::CounterRng::keyed(seed, 0x53504c4954ULL, f).bits(0));
    std::vector<std::size_t> order(ids.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    std::vector<bool> in_val(ids.size(), false);
    for (std::size_t i = 0; i < n_val; ++i) in_val[order[i]] = true;
    FoldSplit split;
    split.fold = f;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      (in_val[i] ? split.validation_ids : split.train_ids).push_back(ids[i]);
    }
    out.push_back(std::move(split));
  }
  return out;
}

void write_splits(const std::filesystem::path& path, const std::vector<FoldSplit>& splits) {
  nlohmann::ordered_json doc;
  doc["folds"] = nlohmann::ordered_json::array();
  for (const auto& s : splits) {
    nlohmann::ordered_json f;
    f["fold"] = s.fold;
    f["train"] = s.train_ids;
    f["validation"] = s.validation_ids;
    doc["folds"].push_back(std::move(f));
  }
  write_file_atomic(path, doc.dump(2) + "\n");
}

std::vector<FoldSplit> read_splits(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError(path.string() + ": cannot open splits file");
  try {
    const auto doc = nlohmann::json::parse(in);
    std::vector<FoldSplit> out;
    for (const auto& f : doc.at("folds")) {
      FoldSplit s;
      s.fold = f.at("fold").get<std::size_t>();
      s.train_ids = f.at("train").get<std::vector<std::string>>();
      s.validation_ids = f.at("validation").get<std::vector<std::string>>();
      out.push_back(std::move(s));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw IngestError(path.string() + ": malformed splits file: " + e.what());
  }
}

}  // namespace mgct::dataio
