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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mgct/numkit/tensor.hpp"

namespace mgct::dataio {

// Bag file layout, little-endian:
//   bytes 0-3   magic "MGCB"
//   bytes 4-7   u32 d_in (feature width)
//   bytes 8-11  u32 N (patch count)
//   bytes 12-15 u32 reserved, written as 0
//   then d_in * N float32 values, patch by patch (column-major).
inline constexpr std::array<char, 4> kBagMagic = {'M', 'G', 'C', 'B'};
inline constexpr std::size_t kBagHeaderBytes = 16;

// Parses a bag from raw bytes; `source` names the origin in error messages.
numkit::Tensor decode_bag(std::span<const std::uint8_t> bytes, const std::string& source);
std::vector<std::uint8_t> encode_bag(const numkit::Tensor& patches);

// d_in x N tensor, one column per patch. Throws FormatError on a bad
// magic, a truncated or oversized payload, or a non-finite value.
numkit::Tensor read_bag(const std::filesystem::path& path);
// Values are narrowed to float32 on disk.
void write_bag(const std::filesystem::path& path, const numkit::Tensor& patches);

}  // namespace mgct::dataio
