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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "xqml/dataset.hpp"
#include "xqml/evaluation.hpp"
#include "xqml/qcore.hpp"
#include "xqml/training.hpp"

namespace xqml::serialization {

using Json = nlohmann::json;

/// FNV-1a over a string; used to stamp outputs with the config they came from.
std::uint64_t fnv1a(const std::string& text);
std::string hash_hex(std::uint64_t h);

// Circuit + parameters: {num_qubits, num_layers, observables, params}.
Json circuit_to_json(const qcore::CircuitSpec& spec, const qcore::ParamVector& theta);
std::pair<qcore::CircuitSpec, qcore::ParamVector> circuit_from_json(const Json& j);

// Dataset CSV (columns x0..x{d-1}, label) with a provenance comment line.
std::string dataset_to_csv(const std::vector<dataset::Sample>& samples,
                           const std::string& provenance);
std::vector<dataset::Sample> dataset_from_csv(const std::string& text);

// Training history CSV: epoch, loss, train_accuracy, test_accuracy.
std::string history_to_csv(const std::vector<training::EpochStats>& history,
                           const std::string& provenance);

// One JSON-lines record per explained sample:
// {sample_id, class, method, values, residual, function_value, config_hash}.
std::string explanations_to_jsonl(const std::vector<evaluation::ExplainedSample>& explained,
                                  const std::string& method, const std::string& config_hash);
struct ExplanationRecord {
  int sample_id = 0;
  int label = 0;
  std::string method;
  Vector values;
  double residual = 0.0;
  double function_value = 0.0;
  std::string config_hash;
};
std::vector<ExplanationRecord> explanations_from_jsonl(const std::string& text);

// Evaluation report: CSV rows (method, metric, mean, stderr, n_excluded) and
// a JSON mirror.
std::string report_to_csv(const evaluation::SuiteReport& report, const std::string& provenance);
Json report_to_json(const evaluation::SuiteReport& report, const std::string& config_hash);

/// Raised when an input or output file cannot be accessed.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Small file helpers; throw IoError with the path on failure.
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

/// Full-precision decimal formatting that round-trips doubles exactly.
std::string format_double(double v);

}  // namespace xqml::serialization
