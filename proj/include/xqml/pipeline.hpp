// Copyright 2026 The xqml authors
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

#include <string>
#include <vector>

#include "xqml/attribution.hpp"
#include "xqml/dataset.hpp"
#include "xqml/evaluation.hpp"
#include "xqml/serialization.hpp"
#include "xqml/training.hpp"

namespace xqml::pipeline {

/// One experiment: dataset -> train -> explain -> evaluate. Serialized as a
/// single JSON document; unknown keys are rejected.
struct ExperimentConfig {
  dataset::DatasetConfig data;
  std::uint64_t split_seed = 1;
  training::TrainConfig train;
  std::vector<attribution::Method> methods = attribution::all_methods();
  attribution::BaselineConfig explain;
  std::string out_dir = "out";
  std::uint64_t seed = 7;

  void reseed(std::uint64_t new_seed);
};

ExperimentConfig default_config(double m);

serialization::Json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const serialization::Json& j);

/// Hash of the canonical JSON form, stamped into every output file.
std::string config_hash(const ExperimentConfig& cfg);

// Stage outputs, under cfg.out_dir:
//   dataset.csv, dataset_meta.json
//   model.json, history.csv
//   explanations.jsonl
//   report.csv, report.json
void run_dataset(const ExperimentConfig& cfg);
void run_train(const ExperimentConfig& cfg);
void run_explain(const ExperimentConfig& cfg);
void run_evaluate(const ExperimentConfig& cfg);

/// All four stages in order.
void run_all(const ExperimentConfig& cfg);

}  // namespace xqml::pipeline
