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

#include "xqml/pipeline.hpp"

#include <filesystem>
#include <set>
#include <stdexcept>

#include "xqml/model.hpp"
#include "xqml/qlrp.hpp"

namespace xqml::pipeline {

namespace fs = std::filesystem;
using serialization::Json;

namespace {

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key))
      throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
  }
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
  return (fs::path(cfg.out_dir) / name).string();
}

std::string provenance(const ExperimentConfig& cfg) {
  return "config_hash=" + config_hash(cfg) + " seed=" + std::to_string(cfg.seed);
}

}  // namespace

void ExperimentConfig::reseed(std::uint64_t new_seed) {
  seed = new_seed;
  data.seed = new_seed + 1;
  split_seed = new_seed + 2;
  train.seed = new_seed + 3;
  explain.rng_seed = new_seed + 4;
}

ExperimentConfig default_config(double m) {
  ExperimentConfig cfg;
  cfg.data.m = m;
  cfg.reseed(cfg.seed);
  return cfg;
}

Json config_to_json(const ExperimentConfig& cfg) {
  Json j;
  j["dataset"] = {{"samples_per_class", cfg.data.samples_per_class},
                  {"m", cfg.data.m},
                  {"sigma", cfg.data.sigma},
                  {"seed", cfg.data.seed}};
  j["split_seed"] = cfg.split_seed;
  j["train"] = {{"learning_rate", cfg.train.learning_rate},
                {"epochs", cfg.train.epochs},
                {"layers", cfg.train.layers},
                {"batch_size", cfg.train.batch_size},
                {"eps_stab", cfg.train.eps_stab},
                {"seed", cfg.train.seed}};
  Json methods = Json::array();
  for (auto m : cfg.methods) methods.push_back(attribution::method_name(m));
  j["methods"] = methods;
  Json explain;
  if (cfg.explain.baseline.size() > 0)
    explain["baseline"] =
        std::vector<double>(cfg.explain.baseline.begin(), cfg.explain.baseline.end());
  explain["ig_steps"] = cfg.explain.ig_steps;
  explain["sv_samples"] = cfg.explain.sv_samples;
  explain["smoothgrad_sigma"] = cfg.explain.smoothgrad_sigma;
  explain["smoothgrad_samples"] = cfg.explain.smoothgrad_samples;
  explain["rng_seed"] = cfg.explain.rng_seed;
  j["explain"] = explain;
  j["out_dir"] = cfg.out_dir;
  j["seed"] = cfg.seed;
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  check_keys(j, {"dataset", "split_seed", "train", "methods", "explain", "out_dir", "seed"},
             "top level");
  ExperimentConfig cfg;
  if (j.contains("seed")) cfg.reseed(j.at("seed").get<std::uint64_t>());

  if (j.contains("dataset")) {
    const Json& d = j.at("dataset");
    check_keys(d, {"samples_per_class", "m", "sigma", "seed"}, "dataset");
    if (d.contains("samples_per_class"))
      cfg.data.samples_per_class = d.at("samples_per_class").get<int>();
    if (d.contains("m")) cfg.data.m = d.at("m").get<double>();
    if (d.contains("sigma")) cfg.data.sigma = d.at("sigma").get<double>();
    if (d.contains("seed")) cfg.data.seed = d.at("seed").get<std::uint64_t>();
  }
  if (j.contains("split_seed")) cfg.split_seed = j.at("split_seed").get<std::uint64_t>();
  if (j.contains("train")) {
    const Json& t = j.at("train");
    check_keys(t, {"learning_rate", "epochs", "layers", "batch_size", "eps_stab", "seed"},
               "train");
    if (t.contains("learning_rate")) cfg.train.learning_rate = t.at("learning_rate").get<double>();
    if (t.contains("epochs")) cfg.train.epochs = t.at("epochs").get<int>();
    if (t.contains("layers")) cfg.train.layers = t.at("layers").get<int>();
    if (t.contains("batch_size")) cfg.train.batch_size = t.at("batch_size").get<int>();
    if (t.contains("eps_stab")) cfg.train.eps_stab = t.at("eps_stab").get<double>();
    if (t.contains("seed")) cfg.train.seed = t.at("seed").get<std::uint64_t>();
  }
  if (j.contains("methods")) {
    cfg.methods.clear();
    for (const auto& name : j.at("methods")) {
      const auto m = attribution::method_from_name(name.get<std::string>());
      if (!m)
        throw std::domain_error("config: unsupported method '" + name.get<std::string>() + "'");
      cfg.methods.push_back(*m);
    }
  }
  if (j.contains("explain")) {
    const Json& e = j.at("explain");
    check_keys(e,
               {"baseline", "ig_steps", "sv_samples", "smoothgrad_sigma", "smoothgrad_samples",
                "rng_seed"},
               "explain");
    if (e.contains("baseline")) {
      const auto b = e.at("baseline").get<std::vector<double>>();
      cfg.explain.baseline = Vector(b.size());
      for (std::size_t i = 0; i < b.size(); ++i) cfg.explain.baseline[i] = b[i];
    }
    if (e.contains("ig_steps")) cfg.explain.ig_steps = e.at("ig_steps").get<int>();
    if (e.contains("sv_samples")) cfg.explain.sv_samples = e.at("sv_samples").get<int>();
    if (e.contains("smoothgrad_sigma"))
      cfg.explain.smoothgrad_sigma = e.at("smoothgrad_sigma").get<double>();
    if (e.contains("smoothgrad_samples"))
      cfg.explain.smoothgrad_samples = e.at("smoothgrad_samples").get<int>();
    if (e.contains("rng_seed")) cfg.explain.rng_seed = e.at("rng_seed").get<std::uint64_t>();
  }
  if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
  cfg.data.validate();
  cfg.train.validate();
  cfg.explain.validate();
  return cfg;
}

std::string config_hash(const ExperimentConfig& cfg) {
  return serialization::hash_hex(serialization::fnv1a(config_to_json(cfg).dump()));
}

void run_dataset(const ExperimentConfig& cfg) {
  fs::create_directories(cfg.out_dir);
  const auto samples = dataset::generate(cfg.data);
  serialization::write_file(out_path(cfg, "dataset.csv"),
                            serialization::dataset_to_csv(samples, provenance(cfg)));
  Json meta;
  meta["config"] = config_to_json(cfg);
  meta["config_hash"] = config_hash(cfg);
  meta["n_samples"] = samples.size();
  serialization::write_file(out_path(cfg, "dataset_meta.json"), meta.dump(2) + "\n");
}

void run_train(const ExperimentConfig& cfg) {
  const auto samples =
      serialization::dataset_from_csv(serialization::read_file(out_path(cfg, "dataset.csv")));
  const auto split = dataset::split_train_test(samples, cfg.split_seed);
  const auto model = training::train(split.train, split.test, cfg.train);

  Json j = serialization::circuit_to_json(model.spec, model.theta);
  j["config_hash"] = config_hash(cfg);
  j["seed"] = cfg.seed;
  serialization::write_file(out_path(cfg, "model.json"), j.dump(2) + "\n");
  serialization::write_file(out_path(cfg, "history.csv"),
                            serialization::history_to_csv(model.history, provenance(cfg)));
}

void run_explain(const ExperimentConfig& cfg) {
  const auto samples =
      serialization::dataset_from_csv(serialization::read_file(out_path(cfg, "dataset.csv")));
  const auto split = dataset::split_train_test(samples, cfg.split_seed);
  const Json model_json = Json::parse(serialization::read_file(out_path(cfg, "model.json")));
  auto [spec, theta] = serialization::circuit_from_json(model_json);
  const PqcModel model(std::move(spec), std::move(theta));

  std::string jsonl;
  for (const auto method : cfg.methods) {
    const auto explained = evaluation::explain_all(model, split.test, method, cfg.explain);
    jsonl += serialization::explanations_to_jsonl(explained, attribution::method_name(method),
                                                  config_hash(cfg));
  }
  serialization::write_file(out_path(cfg, "explanations.jsonl"), jsonl);
}

void run_evaluate(const ExperimentConfig& cfg) {
  const auto records = serialization::explanations_from_jsonl(
      serialization::read_file(out_path(cfg, "explanations.jsonl")));

  evaluation::SuiteReport report;
  for (const auto method : cfg.methods) {
    const std::string name = attribution::method_name(method);
    std::vector<evaluation::ExplainedSample> explained;
    for (const auto& r : records) {
      if (r.method != name) continue;
      evaluation::ExplainedSample e;
      e.sample_id = r.sample_id;
      e.label = r.label;
      e.explanation.values = r.values;
      e.explanation.method = method;
      e.explanation.target_class = r.label;
      e.function_value = r.function_value;
      explained.push_back(std::move(e));
    }
    if (explained.empty())
      throw std::runtime_error("evaluate: no explanations for method " + name);
    report.methods.push_back(evaluation::report_for(method, explained));
    report.n_samples = static_cast<int>(explained.size());
  }

  serialization::write_file(out_path(cfg, "report.csv"),
                            serialization::report_to_csv(report, provenance(cfg)));
  serialization::write_file(out_path(cfg, "report.json"),
                            serialization::report_to_json(report, config_hash(cfg)).dump(2) + "\n");
}

void run_all(const ExperimentConfig& cfg) {
  run_dataset(cfg);
  run_train(cfg);
  run_explain(cfg);
  run_evaluate(cfg);
}

}  // namespace xqml::pipeline
