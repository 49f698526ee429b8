#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "xqml/cli.hpp"
#include "xqml/pipeline.hpp"
#include "xqml/serialization.hpp"

using namespace xqml;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("xqml_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str(const std::string& name = "") const { return (path / name).string(); }
};

// Small end-to-end configuration kept cheap enough for the unit suite.
serialization::Json tiny_config(const std::string& out_dir) {
  serialization::Json j;
  j["seed"] = 21;
  j["dataset"] = {{"samples_per_class", 15}, {"m", 0.1}};
  j["train"] = {{"epochs", 2}, {"layers", 1}, {"batch_size", 64}};
  j["methods"] = {"grad", "taylor1", "qlrp"};
  j["explain"] = {{"ig_steps", 8}, {"sv_samples", 16}, {"smoothgrad_samples", 8}};
  j["out_dir"] = out_dir;
  return j;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("full pipeline produces byte-identical outputs on rerun") {
  TempDir tmp;
  const std::string cfg_path = tmp.str("config.json");
  serialization::write_file(cfg_path, tiny_config(tmp.str("run")).dump(2));

  for (const std::string cmd : {"dataset", "train", "explain", "evaluate"}) {
    CAPTURE(cmd);
    REQUIRE(cli::run({cmd, "--config", cfg_path}) == cli::kOk);
  }
  const std::string report1 = serialization::read_file(tmp.str("run/report.csv"));
  const std::string expl1 = serialization::read_file(tmp.str("run/explanations.jsonl"));

  // Rerun the explanation and evaluation stages; outputs must not change.
  REQUIRE(cli::run({"explain", "--config", cfg_path}) == cli::kOk);
  REQUIRE(cli::run({"evaluate", "--config", cfg_path}) == cli::kOk);
  CHECK(serialization::read_file(tmp.str("run/report.csv")) == report1);
  CHECK(serialization::read_file(tmp.str("run/explanations.jsonl")) == expl1);

  // Report has one row per (method, metric).
  int rows = 0;
  for (char c : report1)
    if (c == '\n') ++rows;
  CHECK(rows == 2 + 3 * 4);  // comment + header + 3 methods x 4 metrics
}

TEST_CASE("missing config file maps to the file exit code") {
  CHECK(cli::run({"dataset", "--config", "/nonexistent/config.json"}) == cli::kMissingFile);
}

TEST_CASE("unknown config keys map to the config exit code") {
  TempDir tmp;
  const std::string cfg_path = tmp.str("bad.json");
  auto j = tiny_config(tmp.str("run"));
  j["not_a_key"] = 1;
  serialization::write_file(cfg_path, j.dump());
  CHECK(cli::run({"dataset", "--config", cfg_path}) == cli::kInvalidConfig);
  CHECK(!fs::exists(tmp.str("run/dataset.csv")));
}

TEST_CASE("unsupported method names map to the method exit code") {
  TempDir tmp;
  const std::string cfg_path = tmp.str("bad_method.json");
  auto j = tiny_config(tmp.str("run"));
  j["methods"] = {"grad", "definitely_not_a_method"};
  serialization::write_file(cfg_path, j.dump());
  CHECK(cli::run({"explain", "--config", cfg_path}) == cli::kUnknownMethod);
  CHECK(!fs::exists(tmp.str("run/explanations.jsonl")));

  // The same applies to the --methods flag.
  serialization::write_file(cfg_path, tiny_config(tmp.str("run")).dump());
  CHECK(cli::run({"explain", "--config", cfg_path, "--methods", "grad,bogus"}) ==
        cli::kUnknownMethod);
}

TEST_CASE("missing upstream stage outputs map to the file exit code") {
  TempDir tmp;
  const std::string cfg_path = tmp.str("config.json");
  serialization::write_file(cfg_path, tiny_config(tmp.str("fresh")).dump());
  CHECK(cli::run({"train", "--config", cfg_path}) == cli::kMissingFile);
}

TEST_CASE("seed flag overrides the config seed") {
  TempDir tmp;
  const std::string cfg_path = tmp.str("config.json");
  serialization::write_file(cfg_path, tiny_config(tmp.str("a")).dump());

  REQUIRE(cli::run({"dataset", "--config", cfg_path}) == cli::kOk);
  REQUIRE(cli::run({"dataset", "--config", cfg_path, "--out", tmp.str("b"), "--seed", "99"}) ==
          cli::kOk);
  CHECK(serialization::read_file(tmp.str("a/dataset.csv")) !=
        serialization::read_file(tmp.str("b/dataset.csv")));
}

TEST_CASE("config defaults match the documented experiment scale") {
  const pipeline::ExperimentConfig cfg = pipeline::default_config(0.5);
  CHECK(cfg.data.samples_per_class == 1000);
  CHECK(cfg.train.epochs == 200);
  CHECK(cfg.train.layers == 5);
  CHECK(cfg.train.batch_size == 1000);
  CHECK(cfg.train.learning_rate == 1.0);
  CHECK(cfg.methods.size() == 10);
}

}  // TEST_SUITE
