#include <doctest.h>

#include <set>

#include "xqml/dataset.hpp"

using namespace xqml;
using namespace xqml::dataset;

TEST_SUITE("dataset") {

TEST_CASE("ground-truth masks follow the class table") {
  CHECK(ground_truth_mask(0).values == std::array<int, 6>{1, 1, 1, 0, 0, 0});
  CHECK(ground_truth_mask(1).values == std::array<int, 6>{0, 0, 0, 1, 1, 1});
  CHECK(ground_truth_mask(2).values == std::array<int, 6>{1, 0, 1, 0, 1, 0});
  CHECK(ground_truth_mask(3).values == std::array<int, 6>{0, 1, 0, 1, 0, 1});
}

TEST_CASE("masks have three ones each and are pairwise distinct") {
  std::set<std::array<int, 6>> seen;
  for (int c = 0; c < kNumClasses; ++c) {
    const Mask m = ground_truth_mask(c);
    CHECK(m.ones() == 3);
    seen.insert(m.values);
  }
  CHECK(seen.size() == 4);

  // The first two classes complement each other.
  for (int j = 0; j < kDim; ++j)
    CHECK(ground_truth_mask(0).values[j] + ground_truth_mask(1).values[j] == 1);
}

TEST_CASE("main dimensions draw near their configured means") {
  DatasetConfig cfg;
  cfg.samples_per_class = 100000;
  cfg.m = 0.1;
  cfg.seed = 8;
  const auto samples = generate(cfg);

  double mean0 = 0.0;
  int count = 0;
  for (const auto& s : samples) {
    if (s.label != 0) continue;
    mean0 += s.x[0];  // first main dimension of class 0, mean 1/2
    ++count;
  }
  mean0 /= count;
  CHECK(count == cfg.samples_per_class);
  CHECK(std::abs(mean0 - 0.5) < 0.01);
}

TEST_CASE("remaining dimensions stay inside their interval") {
  for (double m : {0.5, kPi}) {
    DatasetConfig cfg;
    cfg.samples_per_class = 2000;
    cfg.m = m;
    cfg.seed = 9;
    for (const auto& s : generate(cfg)) {
      const Mask mask = ground_truth_mask(s.label);
      for (int j = 0; j < kDim; ++j) {
        if (!mask.values[j]) {
          CHECK(s.x[j] >= -m);
          CHECK(s.x[j] <= m);
        }
      }
    }
  }
}

TEST_CASE("generation is deterministic per seed") {
  DatasetConfig cfg;
  cfg.samples_per_class = 50;
  cfg.seed = 10;
  const auto a = generate(cfg);
  const auto b = generate(cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].label == b[i].label);
    CHECK((a[i].x - b[i].x).cwiseAbs().maxCoeff() == 0.0);
  }

  cfg.seed = 11;
  const auto c = generate(cfg);
  bool identical = true;
  for (std::size_t i = 0; i < a.size() && identical; ++i)
    identical = (a[i].x - c[i].x).cwiseAbs().maxCoeff() == 0.0;
  CHECK(!identical);
}

TEST_CASE("split is stratified 80/20") {
  DatasetConfig cfg;
  cfg.samples_per_class = 100;
  cfg.seed = 12;
  const auto samples = generate(cfg);
  const Split split = split_train_test(samples, 99);
  CHECK(split.train.size() == 320);
  CHECK(split.test.size() == 80);
  for (int c = 0; c < kNumClasses; ++c) {
    const auto count = [&](const std::vector<Sample>& v) {
      int n = 0;
      for (const auto& s : v)
        if (s.label == c) ++n;
      return n;
    };
    CHECK(count(split.train) == 80);
    CHECK(count(split.test) == 20);
  }
}

TEST_CASE("config validation") {
  DatasetConfig cfg;
  cfg.samples_per_class = 0;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
  cfg.samples_per_class = 10;
  cfg.m = -1.0;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
}

}  // TEST_SUITE
