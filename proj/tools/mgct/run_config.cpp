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

#include "mgct/run_config.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

namespace mgct::cli {
namespace {

using nlohmann::ordered_json;

class Reader {
 public:
  using Handler = std::function<void(const ordered_json&, const std::string&)>;

  void object(const ordered_json& j, const std::string& path, const std::map<std::string, Handler>& fields) {
    if (!j.is_object()) {
      errors_.push_back(label(path) + ": expected an object");
      return;
    }
    for (const auto& [key, value] : j.items()) {
      const std::string sub = path.empty() ? key : path + "." + key;
      auto it = fields.find(key);
      if (it == fields.end()) {
        unknown_.push_back(sub);
      } else {
        it->second(value, sub);
      }
    }
  }

  Handler count(std::size_t& out, std::size_t min, std::size_t max = SIZE_MAX) {
    return [this, &out, min, max](const ordered_json& v, const std::string& path) {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        errors_.push_back(path + ": expected a non-negative integer");
      } else if (v.get<std::uint64_t>() < min || v.get<std::uint64_t>() > max) {
        errors_.push_back(path + ": must be in [" + std::to_string(min) + ", " +
                          (max == SIZE_MAX ? std::string("inf") : std::to_string(max)) + "]");
      } else {
        out = v.get<std::size_t>();
      }
    };
  }

  Handler real(double& out, double lo, double hi, bool lo_open = false, bool hi_open = false) {
    return [=, this, &out](const ordered_json& v, const std::string& path) {
      if (!v.is_number()) {
        errors_.push_back(path + ": expected a number");
        return;
      }
      const double x = v.get<double>();
      const bool ok = (lo_open ? x > lo : x >= lo) && (hi_open ? x < hi : x <= hi);
      if (!ok) {
        std::ostringstream os;
        os << path << ": must be in " << (lo_open ? "(" : "[") << lo << ", " << hi << (hi_open ? ")" : "]");
        errors_.push_back(os.str());
      } else {
        out = x;
      }
    };
  }

  Handler text(std::string& out) {
    return [this, &out](const ordered_json& v, const std::string& path) {
      if (!v.is_string()) {
        errors_.push_back(path + ": expected a string");
      } else {
        out = v.get<std::string>();
      }
    };
  }

  Handler flag(bool& out) {
    return [this, &out](const ordered_json& v, const std::string& path) {
      if (!v.is_boolean()) {
        errors_.push_back(path + ": expected true or false");
      } else {
        out = v.get<bool>();
      }
    };
  }

  void error(std::string message) { errors_.push_back(std::move(message)); }

  void finish() const {
    if (unknown_.empty() && errors_.empty()) return;
    std::string msg = "invalid run config";
    if (!unknown_.empty()) {
      msg += "; unknown keys:";
      for (const auto& k : unknown_) msg += " " + k;
    }
    for (const auto& e : errors_) msg += "; " + e;
    throw UsageError(msg);
  }

 private:
  static std::string label(const std::string& path) { return path.empty() ? "<root>" : path; }

  std::vector<std::string> unknown_;
  std::vector<std::string> errors_;
};

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("run config is not valid JSON: ") + e.what());
  }
  RunConfig c;
  Reader r;
  auto& t = c.train;
  auto& f = t.fusion;
  std::size_t seed = 0;
  bool seed_set = false;
  r.object(doc, "",
           {
               {"manifest", r.text(c.manifest)},
               {"categories", r.text(c.categories)},
               {"seed",
                [&](const ordered_json& v, const std::string& path) {
                  r.count(seed, 0)(v, path);
                  seed_set = v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
                }},
               {"model",
                [&](const ordered_json& v, const std::string& path) {
                  const std::string m = v.is_string() ? v.get<std::string>() : "";
                  if (m.size() != 1 || m[0] < 'A' || m[0] > 'E') {
                    r.error(path + ": expected one of \"A\".. \"E\"");
                  } else {
                    c.model = m[0];
                  }
                }},
               {"folds", r.count(c.folds, 1)},
               {"validation_ratio", r.real(c.validation_ratio, 0.0, 1.0, true, true)},
               {"jobs", r.count(c.jobs, 1, 256)},
               {"output_dir", r.text(c.output_dir)},
               {"epochs", r.count(t.epochs, 0, 100000)},
               {"lr", r.real(t.lr, 0.0, 1.0, true)},
               {"weight_decay", r.real(t.weight_decay, 0.0, 1.0)},
               {"accumulation", r.count(t.accumulation, 1, 1000000)},
               {"snn_hidden", r.count(t.snn_hidden, 1, 65536)},
               {"dropout", r.real(t.dropout, 0.0, 1.0, false, true)},
               {"fusion",
                [&](const ordered_json& v, const std::string& path) {
                  r.object(v, path,
                           {
                               {"stage1_layers", r.count(f.stage1_layers, 1, 64)},
                               {"stage2_layers", r.count(f.stage2_layers, 1, 64)},
                               {"d", r.count(f.d, 1, 4096)},
                               {"heads", r.count(f.heads, 1, 256)},
                               {"d_a", r.count(f.d_a, 1, 4096)},
                               {"d_ff", r.count(f.d_ff, 1, 16384)},
                               {"bins", r.count(f.bins, 2, 1000)},
                               {"residual", r.flag(f.residual)},
                           });
                }},
               {"loss",
                [&](const ordered_json& v, const std::string& path) {
                  r.object(v, path, {{"alpha", r.real(t.loss.alpha, 0.0, 1.0)}});
                }},
           });
  if (f.d % f.heads != 0) r.error("fusion.heads: must divide fusion.d");
  r.finish();
  if (seed_set) c.seed = seed;
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string dump_run_config(const RunConfig& c) {
  ordered_json j;
  const auto& t = c.train;
  const auto& f = t.fusion;
  j["manifest"] = c.manifest;
  j["categories"] = c.categories;
  if (c.seed) j["seed"] = *c.seed;
  j["model"] = std::string(1, c.model);
  j["folds"] = c.folds;
  j["validation_ratio"] = c.validation_ratio;
  j["jobs"] = c.jobs;
  j["output_dir"] = c.output_dir;
  j["epochs"] = t.epochs;
  j["lr"] = t.lr;
  j["weight_decay"] = t.weight_decay;
  j["accumulation"] = t.accumulation;
  j["snn_hidden"] = t.snn_hidden;
  j["dropout"] = t.dropout;
  j["fusion"] = {{"stage1_layers", f.stage1_layers}, {"stage2_layers", f.stage2_layers},
                 {"d", f.d},
                 {"heads", f.heads},
                 {"d_a", f.d_a},
                 {"d_ff", f.d_ff},
                 {"bins", f.bins},
                 {"residual", f.residual}};
  j["loss"] = {{"alpha", t.loss.alpha}};
  return j.dump(2) + "\n";
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, std::optional<std::uint64_t> config) {
  if (flag) return *flag;
  if (config) return *config;
  if (const char* env = std::getenv("MGCT_SEED"); env && *env) {
    try {
      if (*env == '-') throw std::invalid_argument("negative");
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("MGCT_SEED is not a non-negative integer: ") + env);
  }
  return kDefaultSeed;
}

}  // namespace mgct::cli
