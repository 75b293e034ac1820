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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mgct/model/fusion.hpp"
#include "mgct/train/trainer.hpp"

namespace mgct::cli {

inline constexpr std::uint64_t kDefaultSeed = 7;

// Raised for configuration problems; the CLI maps it to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a train/cv/ablate run needs, with explicit defaults.
struct RunConfig {
  std::string manifest;
  std::string categories;  // empty: categories.json next to the manifest
  std::optional<std::uint64_t> seed;
  char model = 'E';
  std::size_t folds = 5;
  double validation_ratio = 0.2;
  std::size_t jobs = 1;
  std::string output_dir = "runs";
  train::TrainConfig train;
};

// Strict parse: unknown keys, wrong types and out-of-range values are all
// collected into one UsageError message.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::filesystem::path& path);
// Pretty-printed JSON with every field, suitable for parse_run_config.
std::string dump_run_config(const RunConfig& config);

// Flag, then config, then MGCT_SEED, then the built-in default.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, std::optional<std::uint64_t> config);

}  // namespace mgct::cli
