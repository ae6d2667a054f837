#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pdlab/core.hpp"

using namespace pdlab;

TEST_CASE("log_gamma") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(log_gamma(5.0) - std::log(24.0)) < 1e-12);
  CHECK(std::abs(log_gamma(0.5) - 0.5 * std::log(std::numbers::pi)) < 1e-12);
  CHECK(std::abs(log_gamma(0.5) - 0.572364943) < 1e-9);
  for (double x : {1e-3, 0.3, 2.7, 17.5, 1234.5})
    CHECK(std::abs(log_gamma(x) - std::lgamma(x)) <= 1e-12 * std::max(1.0, std::abs(std::lgamma(x))));
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
}

TEST_CASE("regularized_incomplete_beta") {
  CHECK(std::abs(regularized_incomplete_beta(1, 1, 0.3) - 0.3) < 1e-10);
  CHECK(std::abs(regularized_incomplete_beta(0.5, 0.5, 0.5) - 0.5) < 1e-10);
  const double x = 0.3;
  const double poly = 6 * x * x - 8 * x * x * x + 3 * x * x * x * x;
  CHECK(std::abs(regularized_incomplete_beta(2, 3, x) - poly) < 1e-10);
  CHECK(std::abs(poly - 0.3483) < 1e-12);
  CHECK(regularized_incomplete_beta(2.5, 0.7, 0.0) == 0.0);
  CHECK(regularized_incomplete_beta(2.5, 0.7, 1.0) == 1.0);
  CHECK_THROWS_AS(regularized_incomplete_beta(0.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(regularized_incomplete_beta(1.0, 1.0, 1.5), DomainError);

  // reflection symmetry on random inputs
  std::mt19937_64 eng(7);
  std::uniform_real_distribution<double> ab(0.05, 20.0), ux(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double a = ab(eng), b = ab(eng), y = ux(eng);
    CHECK(std::abs(regularized_incomplete_beta(a, b, y) + regularized_incomplete_beta(b, a, 1 - y) - 1) < 1e-10);
  }
  // against Simpson on a smooth case
  const double ref = oracle::simpson([](double t) { return t * t * std::pow(1 - t, 1.5); }, 0, 0.6) /
                     std::exp(std::lgamma(3) + std::lgamma(2.5) - std::lgamma(5.5));
  CHECK(std::abs(regularized_incomplete_beta(3, 2.5, 0.6) - ref) < 1e-9);
}

TEST_CASE("dickman_two_param") {
  CHECK(dickman_two_param(PdParams::make(0.3, 1.0), 1.0, 0.5) == 1.0);
  CHECK(std::abs(dickman_two_param(PdParams::make(0.5, 0.5), 0.5, 2.0) - std::sqrt(0.5)) < 1e-10);
  CHECK(dickman_two_param(PdParams::make(0.5, 0.5), 0.5, 1e12) < 1e-5);
  CHECK_THROWS_AS(dickman_two_param(PdParams::make(0.5, 0.5), 0.5, -1.0), DomainError);
  // non-increasing and continuous at s = 1
  const auto p = PdParams::make(0.4, 0.7);
  double prev = 1.0;
  for (double s = 0.0; s < 20.0; s += 0.05) {
    const double v = dickman_two_param(p, 0.7, s);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
  CHECK(std::abs(dickman_two_param(p, 0.7, 1.0 + 1e-9) - 1.0) < 1e-6);
}

TEST_CASE("PdParams regimes") {
  CHECK_THROWS_AS(PdParams::make(0.5, -0.6), DomainError);
  CHECK_NOTHROW(PdParams::make(0.5, -0.4));
  CHECK_THROWS_AS(PdParams::make(1.0, 1.0), DomainError);
  const auto f = PdParams::make(-0.5, 1.5);
  CHECK(f.is_finite());
  CHECK(f.finite_m() == 3);
  CHECK(f.kappa() == 0.5);
  CHECK_THROWS_AS(PdParams::make(-0.5, 1.2), DomainError);
  CHECK(PdParams::finite(2.0, 3).theta() == 6.0);
  CHECK_THROWS_AS(PdParams::finite(2.0, 1), DomainError);
}

TEST_CASE("RankedWeights invariants") {
  const auto w = RankedWeights::make({0.2, 0.5, 0.1}, 0.2);
  CHECK(w.weights[0] == 0.5);
  CHECK(w.weights[2] == 0.1);
  CHECK(std::abs(w.total() - 1.0) < 1e-15);
  CHECK(std::abs(w.power_sum(2) - 0.30) < 1e-15);
  CHECK_THROWS(RankedWeights::make({0.5, 0.6}, 0.0));
  CHECK_THROWS(RankedWeights::make({0.5, 0.4}, -0.1 + 0.1 - 0.05));
  const auto f = RankedWeights::from_weights({0.25, 0.5});
  CHECK(std::abs(f.residual - 0.25) < 1e-15);
}
