#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qproc/distributions.hpp"
#include "qproc/numeric.hpp"

using namespace qproc;

TEST_CASE("iterated logarithm") {
  CHECK(iterated_log(1.0) == 1.0);
  CHECK(iterated_log(-5.0) == 1.0);
  CHECK(iterated_log(std::exp(std::numbers::e)) == doctest::Approx(1.0).epsilon(1e-15));
  // log(log(10^4)) by direct evaluation
  CHECK(iterated_log(1e4) == doctest::Approx(std::log(std::log(1e4))).epsilon(1e-15));
  CHECK(iterated_log(1e4) == doctest::Approx(2.2203).epsilon(1e-4));
}

TEST_CASE("builtin models exist and expose the expected constants") {
  const auto& models = builtin_models();
  REQUIRE(models.size() >= 3);
  CHECK(model_by_name("uniform").gamma == 0.0);
  CHECK(model_by_name("exp1").gamma == 1.0);
  CHECK(model_by_name("logistic").gamma == 1.0);
  CHECK(model_by_name("uniform").extended_tails);
  CHECK_FALSE(model_by_name("exp1").extended_tails);
  CHECK_THROWS_AS(model_by_name("cauchy"), std::invalid_argument);
}

TEST_CASE("quantile density values") {
  CHECK(quantile_density(model_by_name("uniform"), 0.3) == 1.0);
  CHECK(quantile_density(model_by_name("exp1"), 0.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(quantile_density(model_by_name("logistic"), 0.5) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK_THROWS_AS(quantile_density(model_by_name("exp1"), 0.0), std::domain_error);
  CHECK_THROWS_AS(quantile_density(model_by_name("exp1"), 1.0), std::domain_error);
}

TEST_CASE("quantile round trip and density identities") {
  for (const auto& model : builtin_models()) {
    // Interior node range; heavy-tail nodes are covered by the t grid below.
    for (int i = 1; i < 40; ++i) {
      const double t = static_cast<double>(i) / 40.0;
      const double x = model.quantile(t);
      CHECK(model.quantile(model.cdf(x)) == doctest::Approx(x).epsilon(1e-12));
    }
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 1000; ++i) {
      const double t = static_cast<double>(i) / 1001.0;
      const double q = model.quantile_density(t);
      const double x = model.quantile(t);
      CHECK(std::abs(q * model.density(x) - 1.0) < 1e-12);
      CHECK(x > prev);  // strictly increasing quantile
      prev = x;
    }
  }
}

TEST_CASE("density variation supremum") {
  CHECK(quantile_density_variation_sup(model_by_name("uniform"), 10000) == 0.0);
  // exp1 reduces to t, logistic to |1-2t|; grid nodes are i/10001.
  CHECK(quantile_density_variation_sup(model_by_name("exp1"), 10000) ==
        doctest::Approx(10000.0 / 10001.0).epsilon(1e-9));
  CHECK(quantile_density_variation_sup(model_by_name("logistic"), 10000) ==
        doctest::Approx(1.0 - 2.0 / 10001.0).epsilon(1e-9));
  for (const auto& model : builtin_models()) {
    CHECK(quantile_density_variation_sup(model, 10000) <= model.gamma + 1e-9);
  }
  CHECK_THROWS_AS(quantile_density_variation_sup(model_by_name("uniform"), 1),
                  std::invalid_argument);
}

TEST_CASE("quantile density ratio bound") {
  const auto& uniform = model_by_name("uniform");
  const auto& exp1 = model_by_name("exp1");
  CHECK(quantile_density_ratio_bound_holds(uniform, 0.2, 0.8));
  for (const auto& model : builtin_models()) {
    CHECK(quantile_density_ratio_bound_holds(model, 0.5, 0.5));
  }
  // exp1 at (0.1, 0.9): ratio 9 against bound 81
  CHECK(exp1.quantile_density(0.9) / exp1.quantile_density(0.1) == doctest::Approx(9.0));
  CHECK(quantile_density_ratio_bound_holds(exp1, 0.1, 0.9));
  CHECK_THROWS_AS(quantile_density_ratio_bound_holds(exp1, 0.0, 0.5), std::domain_error);
}

TEST_CASE("ratio bound holds on random pairs for every model") {
  std::mt19937_64 rng(20250808);
  std::uniform_real_distribution<double> unit(1e-6, 1.0 - 1e-6);
  for (const auto& model : builtin_models()) {
    int violations = 0;
    for (int i = 0; i < 10000; ++i) {
      if (!quantile_density_ratio_bound_holds(model, unit(rng), unit(rng))) ++violations;
    }
    CHECK(violations == 0);
  }
}
