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
#include <string_view>
#include <vector>

namespace mgct::dataio {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column; throws IngestError when absent.
  std::size_t column(std::string_view name) const;
};

// RFC 4180 subset: comma separated, double-quoted fields may contain commas
// and doubled quotes. Every row must have as many fields as the header.
CsvTable read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const CsvTable& table);
std::string to_csv_string(const CsvTable& table);

// Shortest representation that parses back to the same double.
std::string format_double(double v);
// Strict parse of the whole field; throws std::invalid_argument on failure.
double parse_double(std::string_view text);
long long parse_int(std::string_view text);

// Writes to a sibling temp file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace mgct::dataio
