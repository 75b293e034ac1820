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
#include <span>
#include <vector>

#include "mgct/model/mgct_model.hpp"

namespace mgct::model {

// Checkpoint layout, little-endian:
//   "MGCK", u32 version,
//   u32 length + UTF-8 JSON model config,
//   u64 training seed,
//   u32 block count, then per block:
//     u32 name length, name bytes, u32 rows, u32 cols, rows*cols f64.
inline constexpr std::uint32_t kCheckpointVersion = 1;

std::vector<std::uint8_t> encode_checkpoint(MgctModel& model, std::uint64_t seed);
// Returns the model and the seed it was saved with.
std::pair<MgctModel, std::uint64_t> decode_checkpoint(std::span<const std::uint8_t> bytes, const std::string& source);

void save_checkpoint(const std::filesystem::path& path, MgctModel& model, std::uint64_t seed);
std::pair<MgctModel, std::uint64_t> load_checkpoint(const std::filesystem::path& path);

}  // namespace mgct::model
