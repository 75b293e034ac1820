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

#include "mgct/train/reports.hpp"

#include <algorithm>

#include "mgct/dataio/csv.hpp"

namespace mgct::train {
namespace {

std::string field(const std::optional<double>& v) { return v ? dataio::format_double(*v) : std::string(); }

}  // namespace

std::string history_csv(const std::vector<EpochMetrics>& history) {
  std::vector<EpochMetrics> rows = history;
  std::stable_sort(rows.begin(), rows.end(), [](const EpochMetrics& a, const EpochMetrics& b) {
    return a.epoch != b.epoch ? a.epoch < b.epoch : a.fold < b.fold;
  });
  dataio::CsvTable t;
  t.header = {"epoch", "fold", "c_index", "auc", "loss"};
  for (const auto& m : rows) {
    t.rows.push_back({std::to_string(m.epoch), std::to_string(m.fold), field(m.c_index), field(m.auc),
                      dataio::format_double(m.loss)});
  }
  return dataio::to_csv_string(t);
}

std::string ablation_csv(const std::vector<AblationRow>& rows) {
  dataio::CsvTable t;
  t.header = {"model", "deep_fusion", "mgca", "gap", "feedforward", "c_index_mean",
              "c_index_std", "auc_mean",  "auc_std", "folds", "failed_folds", "parameters"};
  auto flag = [](bool b) { return std::string(b ? "1" : "0"); };
  for (const auto& r : rows) {
    t.rows.push_back({std::string(1, r.model), flag(r.spec.deep_fusion), flag(r.spec.mgca), flag(r.spec.gap),
                      flag(r.spec.feedforward), field(r.result.c_index.mean), field(r.result.c_index.std),
                      field(r.result.auc.mean), field(r.result.auc.std), std::to_string(r.result.folds.size()),
                      std::to_string(r.result.failed()), std::to_string(r.parameter_count)});
  }
  return dataio::to_csv_string(t);
}

std::string km_csv(const std::vector<survival::KmPoint>& curve) {
  dataio::CsvTable t;
  t.header = {"time", "survival", "at_risk", "events", "censored"};
  for (const auto& p : curve) {
    t.rows.push_back({dataio::format_double(p.time), dataio::format_double(p.survival), std::to_string(p.at_risk),
                      std::to_string(p.events), std::to_string(p.censored)});
  }
  return dataio::to_csv_string(t);
}

}  // namespace mgct::train
