#include <doctest.h>

#include <cmath>
#include <random>

#include "xqml/attribution.hpp"
#include "oracles.hpp"

using namespace xqml;
using namespace xqml::attribution;

namespace {

// Single-qubit bare-readout circuit: f(x) = cos(x).
PqcModel cosine_model() {
  qcore::CircuitSpec spec(1, 0, {0});
  qcore::ParamVector theta(spec, Vector::Zero(0));
  return PqcModel(std::move(spec), std::move(theta));
}

// d independent qubits with bare per-qubit readouts: f_c(x) = cos(x_c).
PqcModel product_model(int d) {
  std::vector<int> obs(d);
  for (int i = 0; i < d; ++i) obs[i] = i;
  qcore::CircuitSpec spec(d, 0, std::move(obs));
  qcore::ParamVector theta(spec, Vector::Zero(0));
  return PqcModel(std::move(spec), std::move(theta));
}

PqcModel random_model(int d, int layers, int classes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> obs(classes);
  for (int i = 0; i < classes; ++i) obs[i] = i;
  qcore::CircuitSpec spec(d, layers, std::move(obs));
  qcore::ParamVector theta(spec, oracles::random_vector(spec.param_count(), rng));
  return PqcModel(std::move(spec), std::move(theta));
}

}  // namespace

TEST_SUITE("attribution") {

TEST_CASE("gradient scores") {
  const PqcModel model = cosine_model();

  SUBCASE("zero at the cosine extremum") {
    const Explanation e = grad_explain(model, Vector::Zero(1), 0);
    CHECK(std::abs(e.values[0]) < 1e-14);
  }

  SUBCASE("matches finite differences on a random circuit") {
    const PqcModel m = random_model(3, 2, 2, 61);
    std::mt19937_64 rng(62);
    const Vector x = oracles::random_vector(3, rng);
    const Explanation e = grad_explain(m, x, 1);
    for (int k = 0; k < 3; ++k) {
      auto f = [&](double t) {
        Vector xt = x;
        xt[k] = t;
        return m.score(xt, 1);
      };
      CHECK(std::abs(e.values[k] - oracles::central_diff(f, x[k])) < 1e-6);
    }
  }

  SUBCASE("per-class gradients follow the product structure") {
    const PqcModel m = product_model(3);
    std::mt19937_64 rng(63);
    const Vector x = oracles::random_vector(3, rng);
    for (int c = 0; c < 3; ++c) {
      const Explanation e = grad_explain(m, x, c);
      for (int k = 0; k < 3; ++k) {
        if (k == c)
          CHECK(e.values[k] == doctest::Approx(-std::sin(x[k])).epsilon(1e-12));
        else
          CHECK(std::abs(e.values[k]) < 1e-12);
      }
    }
  }
}

TEST_CASE("noise-averaged gradients") {
  const PqcModel model = cosine_model();
  BaselineConfig cfg;
  cfg.rng_seed = 99;

  SUBCASE("degenerate noise reduces to the plain gradient") {
    cfg.smoothgrad_sigma = 1e-8;
    cfg.smoothgrad_samples = 64;
    const Vector x = Vector::Constant(1, 0.8);
    const Explanation smooth = smoothgrad_explain(model, x, 0, cfg);
    const Explanation plain = grad_explain(model, x, 0);
    CHECK(std::abs(smooth.values[0] - plain.values[0]) < 1e-5);
  }

  SUBCASE("fixed seed repeats bit-identically") {
    cfg.smoothgrad_samples = 32;
    const Vector x = Vector::Constant(1, 0.3);
    const Explanation a = smoothgrad_explain(model, x, 0, cfg);
    const Explanation b = smoothgrad_explain(model, x, 0, cfg);
    CHECK(a.values[0] == b.values[0]);
  }

  SUBCASE("matches the Gaussian-damped slope within three standard errors") {
    cfg.smoothgrad_sigma = 0.5;
    cfg.smoothgrad_samples = 10000;
    const Vector x = Vector::Constant(1, 1.0);
    const Explanation e = smoothgrad_explain(model, x, 0, cfg);
    // E[-sin(x + z)] = -sin(x) exp(-sigma^2 / 2) for z ~ N(0, sigma^2).
    const double expected = -std::sin(1.0) * std::exp(-0.25 * 0.5);
    // The per-sample values are -sin(x + z); their variance is bounded by 1.
    const double se = 1.0 / std::sqrt(10000.0);
    CHECK(std::abs(e.values[0] - expected) < 3.0 * se);
  }
}

TEST_CASE("absolute-gradient scores") {
  const PqcModel model = cosine_model();
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 5; ++trial) {
    const Vector x = oracles::random_vector(1, rng);
    const Explanation e = sensitivity_explain(model, x, 0);
    CHECK(e.values[0] == doctest::Approx(std::abs(std::sin(x[0]))).epsilon(1e-12));
    CHECK(e.values[0] >= 0.0);
  }
}

TEST_CASE("gradient-times-input scores") {
  SUBCASE("zero input gives zero scores") {
    const PqcModel model = random_model(3, 1, 2, 73);
    const Explanation e = gradxinput_explain(model, Vector::Zero(3), 0);
    CHECK(e.values.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("homogeneous linear model conserves exactly") {
    Vector w(3);
    w << 1.5, -2.0, 0.25;
    const oracles::LinearModel model(w);
    Vector x(3);
    x << 0.5, 1.0, -2.0;
    const Explanation e = gradxinput_explain(model, x, 0);
    for (int i = 0; i < 3; ++i) CHECK(e.values[i] == doctest::Approx(w[i] * x[i]));
    CHECK(e.values.sum() == doctest::Approx(model.score(x, 0)).epsilon(1e-12));
  }

  SUBCASE("elementwise product against a manual computation") {
    const PqcModel model = random_model(2, 1, 1, 79);
    std::mt19937_64 rng(80);
    const Vector x = oracles::random_vector(2, rng);
    const Vector g = model.input_gradient(x, 0);
    const Explanation e = gradxinput_explain(model, x, 0);
    for (int i = 0; i < 2; ++i) CHECK(e.values[i] == doctest::Approx(g[i] * x[i]));
  }
}

TEST_CASE("first-order scores at a reference point") {
  SUBCASE("coincident input and reference give zeros") {
    const PqcModel model = random_model(2, 1, 1, 81);
    const Vector x = Vector::Constant(2, 0.4);
    const Explanation e = taylor1_explain(model, x, 0, x);
    CHECK(e.values.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("linear model conserves exactly") {
    Vector w(2);
    w << 2.0, -0.5;
    const oracles::LinearModel model(w);
    Vector x(2), ref(2);
    x << 1.0, 3.0;
    ref << -0.5, 0.25;
    const Explanation e = taylor1_explain(model, x, 0, ref);
    CHECK(std::abs(e.values.sum() - (model.score(x, 0) - model.score(ref, 0))) < 1e-12);
  }

  SUBCASE("cosine model anchored at the quarter turn") {
    const PqcModel model = cosine_model();
    const Vector ref = Vector::Constant(1, kPi / 2.0);
    for (double x : {0.2, 1.0, 2.6}) {
      const Explanation e = taylor1_explain(model, Vector::Constant(1, x), 0, ref);
      CHECK(e.values[0] == doctest::Approx(-(x - kPi / 2.0)).epsilon(1e-10));
    }
  }
}

TEST_CASE("path-integrated gradients") {
  SUBCASE("completeness on a six-qubit circuit") {
    const PqcModel model = random_model(6, 2, 4, 83);
    std::mt19937_64 rng(84);
    const Vector x = oracles::random_vector(6, rng, 1.0);
    const Vector ref = Vector::Zero(6);
    const Explanation e = integrated_gradients_explain(model, x, 2, ref, 200);
    const double target = model.score(x, 2) - model.score(ref, 2);
    CHECK(std::abs(e.values.sum() - target) < 1e-3);
  }

  SUBCASE("one step suffices for a linear model") {
    Vector w(3);
    w << 0.3, 1.2, -0.7;
    const oracles::LinearModel model(w);
    Vector x(3), ref(3);
    x << 1.0, -1.0, 2.0;
    ref << 0.1, 0.2, 0.3;
    const Explanation e = integrated_gradients_explain(model, x, 0, ref, 1);
    CHECK(std::abs(e.values.sum() - (model.score(x, 0) - model.score(ref, 0))) < 1e-12);
  }

  SUBCASE("coincident input and reference give zeros") {
    const PqcModel model = random_model(2, 1, 1, 85);
    const Vector x = Vector::Constant(2, -0.7);
    const Explanation e = integrated_gradients_explain(model, x, 0, x, 8);
    CHECK(e.values.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("midpoint-rule residual shrinks as steps double") {
    const PqcModel model = random_model(4, 2, 2, 87);
    std::mt19937_64 rng(88);
    const Vector x = oracles::random_vector(4, rng);
    const Vector ref = Vector::Zero(4);
    const double target = model.score(x, 0) - model.score(ref, 0);
    double prev = std::numeric_limits<double>::infinity();
    for (int steps = 8; steps <= 256; steps *= 2) {
      const Explanation e = integrated_gradients_explain(model, x, 0, ref, steps);
      const double residual = std::abs(e.values.sum() - target);
      CHECK(residual <= prev * 1.05 + 1e-12);
      prev = residual;
    }
  }
}

TEST_CASE("coalition scores, exact enumeration") {
  SUBCASE("constant model yields the null attribution") {
    const oracles::ConstantModel model(4, 3.7);
    std::mt19937_64 rng(89);
    const Vector x = oracles::random_vector(4, rng);
    const Explanation e = shapley_exact(model, x, 0, Vector::Zero(4));
    CHECK(e.values.cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("additive models split into per-component differences") {
    using Fn = oracles::AdditiveModel::Fn;
    std::vector<Fn> parts{[](double t) { return std::cos(t); },
                          [](double t) { return 2.0 * std::sin(t); },
                          [](double t) { return t * t; }};
    std::vector<Fn> grads{[](double t) { return -std::sin(t); },
                          [](double t) { return 2.0 * std::cos(t); },
                          [](double t) { return 2.0 * t; }};
    const oracles::AdditiveModel model(parts, grads);
    Vector x(3), ref(3);
    x << 0.9, -1.2, 0.4;
    ref << 0.0, 0.5, -0.3;
    const Explanation e = shapley_exact(model, x, 0, ref);
    for (int i = 0; i < 3; ++i)
      CHECK(e.values[i] == doctest::Approx(parts[i](x[i]) - parts[i](ref[i])).epsilon(1e-12));
  }

  SUBCASE("matches the direct weighted coalition sum") {
    const PqcModel model = random_model(3, 2, 2, 91);
    std::mt19937_64 rng(92);
    const Vector x = oracles::random_vector(3, rng);
    const Vector ref = oracles::random_vector(3, rng, 0.5);
    const Explanation e = shapley_exact(model, x, 1, ref);
    const Vector brute = oracles::brute_force_shapley(model, x, 1, ref);
    CHECK((e.values - brute).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("payout splits exactly") {
    const PqcModel model = random_model(4, 2, 3, 93);
    std::mt19937_64 rng(94);
    const Vector x = oracles::random_vector(4, rng);
    const Vector ref = Vector::Zero(4);
    const Explanation e = shapley_exact(model, x, 0, ref);
    CHECK(std::abs(e.values.sum() - (model.score(x, 0) - model.score(ref, 0))) < 1e-10);
  }

  SUBCASE("symmetric players receive equal scores") {
    // f(x) = cos(x_0) + cos(x_1) + sin(x_2) is symmetric in the first two.
    using Fn = oracles::AdditiveModel::Fn;
    std::vector<Fn> parts{[](double t) { return std::cos(t); },
                          [](double t) { return std::cos(t); },
                          [](double t) { return std::sin(t); }};
    std::vector<Fn> grads{[](double t) { return -std::sin(t); },
                          [](double t) { return -std::sin(t); },
                          [](double t) { return std::cos(t); }};
    const oracles::AdditiveModel model(parts, grads);
    Vector x(3), ref(3);
    x << 0.8, 0.8, -0.4;
    ref << 0.1, 0.1, 0.6;
    const Explanation e = shapley_exact(model, x, 0, ref);
    CHECK(e.values[0] == doctest::Approx(e.values[1]).epsilon(1e-12));
  }

  SUBCASE("coalition cap") {
    const oracles::ConstantModel model(13, 0.0);
    CHECK_THROWS_AS(shapley_exact(model, Vector::Zero(13), 0, Vector::Zero(13)),
                    std::length_error);
  }
}

TEST_CASE("coalition scores, permutation sampling") {
  SUBCASE("constant model yields zeros for any sample count") {
    const oracles::ConstantModel model(3, -1.0);
    const Explanation e =
        shapley_sampling(model, Vector::Ones(3), 0, Vector::Zero(3), 10, 123);
    CHECK(e.values.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("seed determinism") {
    const PqcModel model = random_model(3, 1, 1, 95);
    std::mt19937_64 rng(96);
    const Vector x = oracles::random_vector(3, rng);
    const Explanation a = shapley_sampling(model, x, 0, Vector::Zero(3), 50, 7);
    const Explanation b = shapley_sampling(model, x, 0, Vector::Zero(3), 50, 7);
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("converges toward the exact enumeration") {
    const PqcModel model = random_model(3, 2, 2, 97);
    std::mt19937_64 rng(98);
    const Vector x = oracles::random_vector(3, rng);
    const Vector ref = Vector::Zero(3);
    const Explanation exact = shapley_exact(model, x, 0, ref);
    const Explanation sampled = shapley_sampling(model, x, 0, ref, 20000, 11);
    CHECK((exact.values - sampled.values).cwiseAbs().maxCoeff() < 0.02);
  }
}

TEST_CASE("closed-form series scores") {
  SUBCASE("coincident input and reference give zeros") {
    const PqcModel model = random_model(2, 1, 1, 101);
    const Vector x = Vector::Constant(2, 1.1);
    const Explanation e = taylor_inf_explain(model, x, 0, x);
    CHECK(e.values.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("cosine model anchored at the quarter turn is exact") {
    const PqcModel model = cosine_model();
    const Vector ref = Vector::Constant(1, kPi / 2.0);
    for (double x : {0.3, 1.4, -2.0}) {
      const Explanation e = taylor_inf_explain(model, Vector::Constant(1, x), 0, ref);
      CHECK(e.values[0] == doctest::Approx(std::cos(x)).epsilon(1e-10));
      REQUIRE(e.conservation.has_value());
      CHECK(std::abs(e.conservation->residual) < 1e-12);
      CHECK(std::abs(e.conservation->baseline_value) < 1e-15);
    }
  }

  SUBCASE("separable degree-1 models conserve exactly") {
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    RealMatrix a(1, 5), b(1, 5);
    for (int i = 0; i < 5; ++i) {
      a(0, i) = coeff(rng);
      b(0, i) = coeff(rng);
    }
    Vector offset = Vector::Constant(1, coeff(rng));
    const oracles::SeparableTrigModel model(a, b, offset);
    const Vector x = oracles::random_vector(5, rng);
    const Vector ref = oracles::random_vector(5, rng);
    const Explanation e = taylor_inf_explain(model, x, 0, ref);
    const double lhs = e.values.sum() + model.score(ref, 0);
    CHECK(std::abs(lhs - model.score(x, 0)) < 1e-10);
  }
}

TEST_CASE("conservation bookkeeping") {
  SUBCASE("perfect conservation reports a zero residual") {
    Vector w(2);
    w << 1.0, -1.0;
    const oracles::LinearModel model(w);
    Vector x(2);
    x << 2.0, 0.5;
    const Explanation e = gradxinput_explain(model, x, 0);
    const ConservationReport r = conservation_report(e, model, x, 0, Vector::Zero(2));
    CHECK(r.residual == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(std::abs(r.residual - (r.sum_relevance + r.baseline_value - r.function_value)) == 0.0);
  }

  SUBCASE("relative error flags near-zero outputs") {
    const oracles::ConstantModel model(2, 0.0);
    Explanation e;
    e.values = Vector::Ones(2);
    CHECK(!relative_error(e, model, Vector::Zero(2), 0).has_value());
  }

  SUBCASE("relative error of an exactly conservative score set") {
    Vector w(2);
    w << 1.0, 2.0;
    const oracles::LinearModel model(w);
    Vector x(2);
    x << 0.7, -0.2;
    const Explanation e = gradxinput_explain(model, x, 0);
    const auto err = relative_error(e, model, x, 0);
    REQUIRE(err.has_value());
    CHECK(*err < 1e-14);
  }
}

TEST_CASE("methods coincide on a homogeneous linear model") {
  Vector w(4);
  w << 1.0, -2.0, 0.5, 3.0;
  const oracles::LinearModel model(w);
  std::mt19937_64 rng(107);
  const Vector x = oracles::random_vector(4, rng, 2.0);
  const Vector ref = Vector::Zero(4);

  const Explanation gxi = gradxinput_explain(model, x, 0);
  const Explanation t1 = taylor1_explain(model, x, 0, ref);
  const Explanation ig = integrated_gradients_explain(model, x, 0, ref, 16);
  const Explanation sv = shapley_exact(model, x, 0, ref);
  CHECK((gxi.values - t1.values).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((gxi.values - ig.values).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((gxi.values - sv.values).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("scores vary continuously in the input") {
  const PqcModel model = random_model(4, 2, 2, 109);
  std::mt19937_64 rng(110);
  const Vector x = oracles::random_vector(4, rng);
  BaselineConfig cfg;
  cfg.rng_seed = 5;
  cfg.smoothgrad_samples = 16;

  double worst_ratio = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    Vector delta = oracles::random_vector(4, rng, 1.0);
    delta *= 1e-3 / delta.norm();
    const Explanation before = grad_explain(model, x, 0);
    const Explanation after = grad_explain(model, x + delta, 0);
    const double change = (after.values - before.values).cwiseAbs().maxCoeff();
    worst_ratio = std::max(worst_ratio, change / delta.norm());
  }
  CHECK(std::isfinite(worst_ratio));
  CHECK(worst_ratio < 1e3);  // smoke bound; the model's slopes are order one
}

}  // TEST_SUITE
