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

#include "mgct/dataio/bag_file.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "mgct/dataio/csv.hpp"
#include "mgct/errors.hpp"

namespace mgct::dataio {
namespace {

std::uint32_t load_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void store_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

}  // namespace

numkit::Tensor decode_bag(std::span<const std::uint8_t> bytes, const std::string& source) {
  if (bytes.size() < kBagHeaderBytes) {
    throw FormatError(source + ": truncated header (" + std::to_string(bytes.size()) + " bytes)");
  }
  if (std::memcmp(bytes.data(), kBagMagic.data(), kBagMagic.size()) != 0) {
    throw FormatError(source + ": bad magic, expected MGCB");
  }
  const std::size_t d_in = load_u32(bytes.data() + 4);
  const std::size_t n = load_u32(bytes.data() + 8);
  if (d_in == 0 || n == 0) throw FormatError(source + ": empty bag (d_in or N is zero)");
  const std::size_t expected = kBagHeaderBytes + 4 * d_in * n;
  if (bytes.size() < expected) {
    throw FormatError(source + ": truncated payload, expected " + std::to_string(expected) + " bytes, found " +
                      std::to_string(bytes.size()));
  }
  if (bytes.size() > expected) {
    throw FormatError(source + ": " + std::to_string(bytes.size() - expected) + " trailing bytes after payload");
  }
  numkit::Tensor patches(d_in, n);
  const std::uint8_t* p = bytes.data() + kBagHeaderBytes;
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t row = 0; row < d_in; ++row, p += 4) {
      const float f = std::bit_cast<float>(load_u32(p));
      if (!std::isfinite(f)) {
        throw FormatError(source + ": non-finite value at feature " + std::to_string(row) + " of patch " +
                          std::to_string(col));
      }
      patches(row, col) = static_cast<double>(f);
    }
  }
  return patches;
}

std::vector<std::uint8_t> encode_bag(const numkit::Tensor& patches) {
  if (patches.rows() == 0 || patches.cols() == 0) throw ContractError("encode_bag: empty bag");
  if (patches.rows() > std::numeric_limits<std::uint32_t>::max() ||
      patches.cols() > std::numeric_limits<std::uint32_t>::max()) {
    throw ContractError("encode_bag: bag dimensions exceed 32 bits");
  }
  std::vector<std::uint8_t> out(kBagMagic.begin(), kBagMagic.end());
  out.reserve(kBagHeaderBytes + 4 * patches.size());
  store_u32(out, static_cast<std::uint32_t>(patches.rows()));
  store_u32(out, static_cast<std::uint32_t>(patches.cols()));
  store_u32(out, 0);
  for (std::size_t col = 0; col < patches.cols(); ++col) {
    for (std::size_t row = 0; row < patches.rows(); ++row) {
      store_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(patches(row, col))));
    }
  }
  return out;
}

numkit::Tensor read_bag(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open bag file");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_bag(bytes, path.string());
}

void write_bag(const std::filesystem::path& path, const numkit::Tensor& patches) {
  const auto bytes = encode_bag(patches);
  write_file_atomic(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace mgct::dataio
