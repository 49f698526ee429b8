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

#include "xqml/cli.hpp"

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "xqml/pipeline.hpp"

namespace xqml::cli {

namespace {

using pipeline::ExperimentConfig;
using serialization::Json;

void emit_error(int code, const std::string& kind, const std::string& message) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  j["code"] = code;
  std::cerr << j.dump() << "\n";
}

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::string methods_csv;
  std::string m_value;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Experiment config JSON");
  cmd->add_option("--out", flags.out_dir, "Output directory (overrides config)");
  cmd->add_option("--methods", flags.methods_csv, "Comma-separated method list");
  cmd->add_option("--m", flags.m_value, "Uniform half-width: 0.1, 0.5 or pi");
  cmd->add_option("--seed", flags.seed, "Global seed (derives all stage seeds)");
}

double parse_m(const std::string& text) {
  if (text == "pi") return kPi;
  if (text == "0.1") return 0.1;
  if (text == "0.5") return 0.5;
  // Any positive numeric value is accepted outside the three presets.
  try {
    const double v = std::stod(text);
    if (v > 0.0) return v;
  } catch (...) {
  }
  throw std::invalid_argument("config: bad value for --m: " + text);
}

ExperimentConfig build_config(const CommonFlags& flags) {
  ExperimentConfig cfg = pipeline::default_config(0.5);
  if (!flags.config_path.empty()) {
    const std::string text = serialization::read_file(flags.config_path);
    cfg = pipeline::config_from_json(Json::parse(text));
  }
  // Flags override config keys.
  if (flags.seed) cfg.reseed(*flags.seed);
  if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
  if (!flags.m_value.empty()) cfg.data.m = parse_m(flags.m_value);
  if (!flags.methods_csv.empty()) {
    cfg.methods.clear();
    std::stringstream ss(flags.methods_csv);
    std::string name;
    while (std::getline(ss, name, ',')) {
      const auto m = attribution::method_from_name(name);
      if (!m) throw std::domain_error("config: unsupported method '" + name + "'");
      cfg.methods.push_back(*m);
    }
  }
  return cfg;
}

int dispatch(const std::string& command, const CommonFlags& flags) {
  try {
    if (command == "reproduce") {
      // One run per requested half-width, in m-labeled subdirectories.
      std::vector<std::string> ms;
      if (flags.m_value.empty() || flags.m_value == "all")
        ms = {"0.1", "0.5", "pi"};
      else
        ms = {flags.m_value};
      for (const auto& m_text : ms) {
        CommonFlags sub = flags;
        sub.m_value = m_text;
        ExperimentConfig cfg = build_config(sub);
        const std::string label = m_text == "pi" ? "mpi" : "m" + m_text;
        cfg.out_dir = (std::filesystem::path(cfg.out_dir) / label).string();
        pipeline::run_all(cfg);
        std::cout << "reproduce " << label << ": report at " << cfg.out_dir << "/report.csv\n";
      }
      return kOk;
    }

    const ExperimentConfig cfg = build_config(flags);
    if (command == "dataset")
      pipeline::run_dataset(cfg);
    else if (command == "train")
      pipeline::run_train(cfg);
    else if (command == "explain")
      pipeline::run_explain(cfg);
    else if (command == "evaluate")
      pipeline::run_evaluate(cfg);
    return kOk;
  } catch (const serialization::IoError& e) {
    emit_error(kMissingFile, "io", e.what());
    return kMissingFile;
  } catch (const std::domain_error& e) {
    emit_error(kUnknownMethod, "method", e.what());
    return kUnknownMethod;
  } catch (const std::invalid_argument& e) {
    emit_error(kInvalidConfig, "config", e.what());
    return kInvalidConfig;
  } catch (const nlohmann::json::exception& e) {
    emit_error(kInvalidConfig, "config", e.what());
    return kInvalidConfig;
  } catch (const std::exception& e) {
    emit_error(kRuntimeError, "runtime", e.what());
    return kRuntimeError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Quantum classifier training and attribution pipeline"};
  app.require_subcommand(1);

  const std::vector<std::string> commands{"dataset", "train", "explain", "evaluate", "reproduce"};
  std::map<std::string, CommonFlags> flags;
  for (const auto& name : commands) {
    auto* cmd = app.add_subcommand(name);
    add_common(cmd, flags[name]);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::cout << app.help();
      return kOk;
    }
    emit_error(kUsageError, "usage", e.what());
    return kUsageError;
  }

  for (const auto& name : commands) {
    if (app.got_subcommand(name)) return dispatch(name, flags[name]);
  }
  emit_error(kUsageError, "usage", "no subcommand given");
  return kUsageError;
}

}  // namespace xqml::cli
