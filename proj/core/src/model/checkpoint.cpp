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

#include "mgct/model/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>

#include <json.hpp>

#include "mgct/dataio/csv.hpp"
#include "mgct/errors.hpp"

namespace mgct::model {
namespace {

using nlohmann::ordered_json;

ordered_json config_to_json(const ModelConfig& c) {
  ordered_json j;
  j["d_in"] = c.d_in;
  j["category_lengths"] = c.category_lengths;
  j["snn_hidden"] = c.snn_hidden;
  j["dropout"] = c.dropout;
  j["fusion"] = {{"stage1_layers", c.fusion.stage1_layers}, {"stage2_layers", c.fusion.stage2_layers},
                 {"d", c.fusion.d},
                 {"heads", c.fusion.heads},
                 {"d_a", c.fusion.d_a},
                 {"d_ff", c.fusion.d_ff},
                 {"bins", c.fusion.bins},
                 {"residual", c.fusion.residual}};
  j["ablation"] = {{"deep_fusion", c.ablation.deep_fusion},
                   {"mgca", c.ablation.mgca},
                   {"gap", c.ablation.gap},
                   {"feedforward", c.ablation.feedforward}};
  return j;
}

ModelConfig config_from_json(const ordered_json& j) {
  ModelConfig c;
  c.d_in = j.at("d_in").get<std::size_t>();
  c.category_lengths = j.at("category_lengths").get<std::vector<std::size_t>>();
  c.snn_hidden = j.at("snn_hidden").get<std::size_t>();
  c.dropout = j.at("dropout").get<double>();
  const auto& f = j.at("fusion");
  c.fusion.stage1_layers = f.at("stage1_layers").get<std::size_t>();
  c.fusion.stage2_layers = f.at("stage2_layers").get<std::size_t>();
  c.fusion.d = f.at("d").get<std::size_t>();
  c.fusion.heads = f.at("heads").get<std::size_t>();
  c.fusion.d_a = f.at("d_a").get<std::size_t>();
  c.fusion.d_ff = f.at("d_ff").get<std::size_t>();
  c.fusion.bins = f.at("bins").get<std::size_t>();
  c.fusion.residual = f.at("residual").get<bool>();
  const auto& a = j.at("ablation");
  c.ablation.deep_fusion = a.at("deep_fusion").get<bool>();
  c.ablation.mgca = a.at("mgca").get<bool>();
  c.ablation.gap = a.at("gap").get<bool>();
  c.ablation.feedforward = a.at("feedforward").get<bool>();
  return c;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Reader {
 public:
  Reader(std::span<const std::uint8_t> bytes, const std::string& source) : bytes_(bytes), source_(source) {}

  std::uint64_t uint(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += static_cast<std::size_t>(width);
    return v;
  }
  std::string text(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) {
    if (bytes_.size() - pos_ < n) throw FormatError(source_ + ": truncated checkpoint");
  }

  std::span<const std::uint8_t> bytes_;
  std::string source_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(MgctModel& model, std::uint64_t seed) {
  std::vector<std::uint8_t> out = {'M', 'G', 'C', 'K'};
  put_u32(out, kCheckpointVersion);
  const std::string cfg = config_to_json(model.config()).dump();
  put_u32(out, static_cast<std::uint32_t>(cfg.size()));
  out.insert(out.end(), cfg.begin(), cfg.end());
  put_u64(out, seed);
  const auto params = model.params();
  put_u32(out, static_cast<std::uint32_t>(params.size()));
  for (const auto& p : params) {
    put_u32(out, static_cast<std::uint32_t>(p.name.size()));
    out.insert(out.end(), p.name.begin(), p.name.end());
    put_u32(out, static_cast<std::uint32_t>(p.tensor->rows()));
    put_u32(out, static_cast<std::uint32_t>(p.tensor->cols()));
    for (double v : p.tensor->data()) put_u64(out, std::bit_cast<std::uint64_t>(v));
  }
  return out;
}

std::pair<MgctModel, std::uint64_t> decode_checkpoint(std::span<const std::uint8_t> bytes, const std::string& source) {
  Reader in(bytes, source);
  if (in.text(4) != "MGCK") throw FormatError(source + ": not a checkpoint (bad magic)");
  const auto version = in.uint(4);
  if (version != kCheckpointVersion) {
    throw FormatError(source + ": unsupported checkpoint version " + std::to_string(version));
  }
  ModelConfig config;
  try {
    config = config_from_json(ordered_json::parse(in.text(in.uint(4))));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(source + ": bad model config: " + e.what());
  }
  const std::uint64_t seed = in.uint(8);
  MgctModel model(config, seed);
  std::map<std::string, numkit::Tensor*> slots;
  for (const auto& p : model.params()) slots.emplace(p.name, p.tensor);
  const auto count = in.uint(4);
  if (count != slots.size()) {
    throw FormatError(source + ": checkpoint has " + std::to_string(count) + " blocks, model has " +
                      std::to_string(slots.size()));
  }
  for (std::uint64_t b = 0; b < count; ++b) {
    const std::string name = in.text(in.uint(4));
    auto it = slots.find(name);
    if (it == slots.end()) throw FormatError(source + ": unexpected parameter block '" + name + "'");
    const auto rows = in.uint(4);
    const auto cols = in.uint(4);
    numkit::Tensor& t = *it->second;
    if (rows != t.rows() || cols != t.cols()) {
      throw FormatError(source + ": block '" + name + "' has shape " + std::to_string(rows) + "x" +
                        std::to_string(cols) + ", expected " + numkit::to_string(t.shape()));
    }
    for (auto& v : t.data()) v = std::bit_cast<double>(in.uint(8));
    slots.erase(it);
  }
  if (!in.done()) throw FormatError(source + ": trailing bytes after last block");
  return {std::move(model), seed};
}

void save_checkpoint(const std::filesystem::path& path, MgctModel& model, std::uint64_t seed) {
  const auto bytes = encode_checkpoint(model, seed);
  dataio::write_file_atomic(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::pair<MgctModel, std::uint64_t> load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open checkpoint");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes, path.string());
}

}  // namespace mgct::model
