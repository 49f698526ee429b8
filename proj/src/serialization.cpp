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

#include "xqml/serialization.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "xqml/attribution.hpp"

namespace xqml::serialization {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

Json circuit_to_json(const qcore::CircuitSpec& spec, const qcore::ParamVector& theta) {
  Json j;
  j["num_qubits"] = spec.num_qubits;
  j["num_layers"] = spec.num_layers;
  j["observables"] = spec.observables;
  j["params"] = std::vector<double>(theta.values.begin(), theta.values.end());
  return j;
}

std::pair<qcore::CircuitSpec, qcore::ParamVector> circuit_from_json(const Json& j) {
  const qcore::CircuitSpec spec(j.at("num_qubits").get<int>(), j.at("num_layers").get<int>(),
                                j.at("observables").get<std::vector<int>>());
  const auto params = j.at("params").get<std::vector<double>>();
  Vector values(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) values[i] = params[i];
  return {spec, qcore::ParamVector(spec, std::move(values))};
}

std::string dataset_to_csv(const std::vector<dataset::Sample>& samples,
                           const std::string& provenance) {
  if (samples.empty()) throw std::invalid_argument("dataset_to_csv: empty sample set");
  std::ostringstream out;
  out << "# " << provenance << "\n";
  const Eigen::Index d = samples.front().x.size();
  for (Eigen::Index i = 0; i < d; ++i) out << "x" << i << ",";
  out << "label\n";
  for (const auto& s : samples) {
    for (Eigen::Index i = 0; i < d; ++i) out << format_double(s.x[i]) << ",";
    out << s.label << "\n";
  }
  return out.str();
}

std::vector<dataset::Sample> dataset_from_csv(const std::string& text) {
  std::vector<dataset::Sample> samples;
  std::istringstream in(text);
  std::string line;
  int columns = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("x0,", 0) == 0) {  // header
      columns = 1;
      for (char c : line)
        if (c == ',') ++columns;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (columns < 0) columns = static_cast<int>(cells.size());
    if (static_cast<int>(cells.size()) != columns)
      throw std::runtime_error("dataset_from_csv: ragged row");
    dataset::Sample s;
    s.x = Vector(columns - 1);
    for (int i = 0; i < columns - 1; ++i) s.x[i] = std::stod(cells[i]);
    s.label = std::stoi(cells.back());
    samples.push_back(std::move(s));
  }
  return samples;
}

std::string history_to_csv(const std::vector<training::EpochStats>& history,
                           const std::string& provenance) {
  std::ostringstream out;
  out << "# " << provenance << "\n";
  out << "epoch,loss,train_accuracy,test_accuracy\n";
  for (const auto& e : history) {
    out << e.epoch << "," << format_double(e.loss) << "," << format_double(e.train_accuracy)
        << "," << format_double(e.test_accuracy) << "\n";
  }
  return out.str();
}

std::string explanations_to_jsonl(const std::vector<evaluation::ExplainedSample>& explained,
                                  const std::string& method, const std::string& config_hash) {
  std::ostringstream out;
  for (const auto& e : explained) {
    Json j;
    j["sample_id"] = e.sample_id;
    j["class"] = e.label;
    j["method"] = method;
    j["values"] = std::vector<double>(e.explanation.values.begin(), e.explanation.values.end());
    j["residual"] = e.explanation.conservation
                        ? e.explanation.conservation->residual
                        : e.explanation.values.sum() - e.function_value;
    j["function_value"] = e.function_value;
    j["config_hash"] = config_hash;
    out << j.dump() << "\n";
  }
  return out.str();
}

std::vector<ExplanationRecord> explanations_from_jsonl(const std::string& text) {
  std::vector<ExplanationRecord> records;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const Json j = Json::parse(line);
    ExplanationRecord r;
    r.sample_id = j.at("sample_id").get<int>();
    r.label = j.at("class").get<int>();
    r.method = j.at("method").get<std::string>();
    const auto values = j.at("values").get<std::vector<double>>();
    r.values = Vector(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) r.values[i] = values[i];
    r.residual = j.at("residual").get<double>();
    r.function_value = j.at("function_value").get<double>();
    r.config_hash = j.at("config_hash").get<std::string>();
    records.push_back(std::move(r));
  }
  return records;
}

namespace {

void append_metric_row(std::ostringstream& out, const std::string& method,
                       const std::string& metric, double mean, double std_error,
                       int n_excluded) {
  out << method << "," << metric << "," << format_double(mean) << ","
      << format_double(std_error) << "," << n_excluded << "\n";
}

}  // namespace

std::string report_to_csv(const evaluation::SuiteReport& report, const std::string& provenance) {
  std::ostringstream out;
  out << "# " << provenance << "\n";
  out << "method,metric,mean,stderr,n_excluded\n";
  for (const auto& m : report.methods) {
    const std::string name = attribution::method_name(m.method);
    append_metric_row(out, name, "q_alignment", m.alignment.mean, m.alignment.std_error,
                      m.alignment.n_excluded);
    append_metric_row(out, name, "q_pearson", m.pearson.mean, m.pearson.std_error,
                      m.pearson.n_excluded);
    append_metric_row(out, name, "q_roc", m.q_roc, 0.0, m.roc_excluded);
    append_metric_row(out, name, "relative_error", m.rel_error.mean, m.rel_error.std_error,
                      m.rel_error.n_excluded);
  }
  return out.str();
}

Json report_to_json(const evaluation::SuiteReport& report, const std::string& config_hash) {
  Json j;
  j["config_hash"] = config_hash;
  j["n_samples"] = report.n_samples;
  Json methods = Json::array();
  for (const auto& m : report.methods) {
    Json entry;
    entry["method"] = attribution::method_name(m.method);
    entry["q_alignment"] = {{"mean", m.alignment.mean},
                            {"stderr", m.alignment.std_error},
                            {"n_excluded", m.alignment.n_excluded}};
    entry["q_pearson"] = {{"mean", m.pearson.mean},
                          {"stderr", m.pearson.std_error},
                          {"n_excluded", m.pearson.n_excluded}};
    entry["q_roc"] = {{"mean", m.q_roc}, {"n_excluded", m.roc_excluded}};
    entry["relative_error"] = {{"mean", m.rel_error.mean},
                               {"stderr", m.rel_error.std_error},
                               {"n_excluded", m.rel_error.n_excluded}};
    methods.push_back(entry);
  }
  j["methods"] = methods;
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace xqml::serialization
