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
#include <optional>
#include <ostream>
#include <string>

namespace mgct::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct SynthArgs {
  std::string out;
  std::size_t n = 200;
  std::optional<std::uint64_t> seed;
  std::size_t d_in = 32;
  double censor_rate = 0.3;
  bool force = false;
};

struct RunArgs {
  std::string config;
  std::optional<char> model;
  std::optional<std::string> manifest;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> epochs;
  std::optional<std::size_t> folds;
  std::optional<std::size_t> jobs;
  std::optional<std::string> out;
  std::optional<std::string> splits;  // reuse a saved splits.json
};

struct EvalArgs {
  std::string checkpoint;
  std::string manifest;
  std::string categories;
  std::string km_out;
  std::optional<std::string> splits;
  std::size_t fold = 0;
  std::optional<double> horizon;
};

struct VerifyArgs {
  std::string inject_fault;  // "" or "tanh-grad-sign"
  std::uint64_t seed = 1;
};

// Each command returns a process exit code and reports to `out`/`err`.
int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err);
int cmd_train(const RunArgs& args, std::ostream& out, std::ostream& err);
int cmd_cv(const RunArgs& args, std::ostream& out, std::ostream& err);
int cmd_ablate(const RunArgs& args, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);

}  // namespace mgct::cli
