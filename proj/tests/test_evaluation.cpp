#include <doctest.h>

#include <random>

#include "xqml/evaluation.hpp"
#include "oracles.hpp"

using namespace xqml;
using namespace xqml::evaluation;

namespace {

Vector from(std::initializer_list<double> vals) {
  Vector v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v[i++] = x;
  return v;
}

}  // namespace

TEST_SUITE("evaluation") {

TEST_CASE("alignment share") {
  const dataset::Mask mask = dataset::ground_truth_mask(0);  // 1,1,1,0,0,0

  SUBCASE("explanation equal to the mask scores one") {
    CHECK(*q_alignment(from({1, 1, 1, 0, 0, 0}), mask) == doctest::Approx(1.0));
  }

  SUBCASE("uniform explanation scores one half") {
    CHECK(*q_alignment(Vector::Ones(6), mask) == doctest::Approx(0.5));
  }

  SUBCASE("hand-computed mixed-sign case") {
    CHECK(*q_alignment(from({1, -2, 0, 1, 0, 0}), mask) == doctest::Approx(0.75));
  }

  SUBCASE("all-zero explanation is flagged undefined") {
    CHECK(!q_alignment(Vector::Zero(6), mask).has_value());
  }

  SUBCASE("invariant under positive rescaling") {
    std::mt19937_64 rng(401);
    const Vector e = oracles::random_vector(6, rng);
    CHECK(*q_alignment(e, mask) == doctest::Approx(*q_alignment(3.7 * e, mask)).epsilon(1e-12));
  }
}

TEST_CASE("per-sample correlation") {
  const dataset::Mask mask = dataset::ground_truth_mask(0);

  CHECK(*q_pearson(from({1, 1, 1, 0, 0, 0}), mask) == doctest::Approx(1.0));
  CHECK(*q_pearson(from({-1, -1, -1, 0, 0, 0}), mask) == doctest::Approx(-1.0));
  CHECK(*q_pearson(from({2, 2, 2, 0, 0, 0}), mask) == doctest::Approx(1.0));

  SUBCASE("constant explanations are flagged undefined") {
    CHECK(!q_pearson(Vector::Ones(6), mask).has_value());
  }

  SUBCASE("invariant under positive affine maps") {
    std::mt19937_64 rng(403);
    const Vector e = oracles::random_vector(6, rng);
    const Vector shifted = (2.5 * e).array() + 0.7;
    CHECK(*q_pearson(e, mask) == doctest::Approx(*q_pearson(shifted, mask)).epsilon(1e-12));
  }
}

TEST_CASE("threshold-sweep area") {
  SUBCASE("perfectly aligned explanations reach one") {
    std::vector<std::pair<Vector, dataset::Mask>> items;
    for (int c = 0; c < 4; ++c) {
      const dataset::Mask mask = dataset::ground_truth_mask(c);
      Vector e = Vector::Zero(6);
      for (int j = 0; j < 6; ++j) e[j] = mask.values[j];
      items.emplace_back(e, mask);
    }
    CHECK(roc_auc(items).auc == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("uniform explanations sit on the diagonal") {
    std::vector<std::pair<Vector, dataset::Mask>> items;
    for (int c = 0; c < 4; ++c)
      items.emplace_back(Vector::Ones(6), dataset::ground_truth_mask(c));
    CHECK(roc_auc(items).auc == doctest::Approx(0.5).epsilon(1e-9));
  }

  SUBCASE("random explanations land near one half") {
    std::mt19937_64 rng(405);
    std::vector<std::pair<Vector, dataset::Mask>> items;
    for (int i = 0; i < 800; ++i)
      items.emplace_back(oracles::random_vector(6, rng, 1.0),
                         dataset::ground_truth_mask(static_cast<int>(rng() % 4)));
    CHECK(std::abs(roc_auc(items).auc - 0.5) < 0.05);
  }

  SUBCASE("complementing the masks mirrors the area") {
    std::mt19937_64 rng(407);
    std::vector<std::pair<Vector, dataset::Mask>> items, flipped;
    for (int i = 0; i < 300; ++i) {
      const Vector e = oracles::random_vector(6, rng, 1.0).cwiseAbs();
      const dataset::Mask mask = dataset::ground_truth_mask(static_cast<int>(rng() % 4));
      dataset::Mask anti;
      for (int j = 0; j < 6; ++j) anti.values[j] = 1 - mask.values[j];
      items.emplace_back(e, mask);
      flipped.emplace_back(e, anti);
    }
    CHECK(std::abs(roc_auc(items).auc + roc_auc(flipped).auc - 1.0) < 0.02);
  }

  SUBCASE("rates are monotone non-increasing in the threshold") {
    std::mt19937_64 rng(409);
    std::vector<std::pair<Vector, dataset::Mask>> items;
    for (int i = 0; i < 50; ++i)
      items.emplace_back(oracles::random_vector(6, rng, 1.0),
                         dataset::ground_truth_mask(static_cast<int>(rng() % 4)));
    const RocCurve curve = roc_auc(items);
    for (std::size_t t = 1; t < curve.thresholds.size(); ++t) {
      CHECK(curve.r_plus[t] <= curve.r_plus[t - 1] + 1e-15);
      CHECK(curve.r_minus[t] <= curve.r_minus[t - 1] + 1e-15);
    }
  }
}

TEST_CASE("aggregation excludes flagged samples") {
  std::vector<std::optional<double>> values{1.0, std::nullopt, 3.0, std::nullopt};
  const MetricAggregate agg = aggregate(values);
  CHECK(agg.n_used == 2);
  CHECK(agg.n_excluded == 2);
  CHECK(agg.mean == doctest::Approx(2.0));
  CHECK(agg.std_error == doctest::Approx(1.0));  // sd = sqrt(2), se = sd / sqrt(2)

  const MetricAggregate order = aggregate({3.0, std::nullopt, 1.0, std::nullopt});
  CHECK(order.mean == agg.mean);  // permutation invariance of the aggregate
}

TEST_CASE("suite runs match direct per-sample calls") {
  std::mt19937_64 rng(411);
  qcore::CircuitSpec spec(6, 1, {0, 1, 2, 3});
  qcore::ParamVector theta(spec, oracles::random_vector(spec.param_count(), rng));
  const PqcModel model(std::move(spec), std::move(theta));

  dataset::DatasetConfig data_cfg;
  data_cfg.samples_per_class = 3;
  data_cfg.seed = 413;
  const auto samples = dataset::generate(data_cfg);

  attribution::BaselineConfig cfg;
  cfg.rng_seed = 415;

  const SuiteReport report =
      evaluate_suite(model, samples, {attribution::Method::kGrad}, cfg);
  REQUIRE(report.methods.size() == 1);

  std::vector<std::optional<double>> qa;
  for (const auto& s : samples) {
    const auto e = attribution::grad_explain(model, s.x, s.label);
    qa.push_back(q_alignment(e.values, dataset::ground_truth_mask(s.label)));
  }
  const MetricAggregate direct = aggregate(qa);
  CHECK(report.methods[0].alignment.mean == doctest::Approx(direct.mean).epsilon(1e-12));
  CHECK(report.methods[0].alignment.n_excluded == direct.n_excluded);
}

}  // TEST_SUITE
