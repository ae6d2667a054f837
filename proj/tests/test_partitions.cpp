#include <doctest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "pdlab/partitions.hpp"
#include "pdlab/sampling.hpp"

using namespace pdlab;

TEST_CASE("partition_count") {
  CHECK(partition_count(0) == 1);
  CHECK(partition_count(1) == 1);
  CHECK(partition_count(4) == 5);
  CHECK(partition_count(10) == 42);
  for (int n = 1; n <= 25; ++n) CHECK(partition_count(n) == oracle::partitions(n).size());
  CHECK(partition_count(60) == 966467);
  CHECK(partition_count(100) == 190569292ULL);
}

TEST_CASE("enumerate_partitions") {
  const auto p3 = enumerate_partitions(3);
  REQUIRE(p3.size() == 3);
  CHECK(p3[0].parts() == std::vector<int>{3});
  CHECK(p3[1].parts() == std::vector<int>{2, 1});
  CHECK(p3[2].parts() == std::vector<int>{1, 1, 1});
  CHECK(enumerate_partitions(8).size() == 22);
  const auto p12 = enumerate_partitions(12);
  const auto ref = oracle::partitions(12);
  REQUIRE(p12.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    CHECK(p12[i].parts() == ref[i]);
    int n = 0, l = 0;
    for (auto [k, m] : p12[i].row_multiplicities()) {
      n += k * m;
      l += m;
    }
    CHECK(n == 12);
    CHECK(l == p12[i].length());
    CHECK(p12[i].size() == 12);
  }
  CHECK_THROWS_AS(enumerate_partitions(61), CapacityError);
  CHECK(IntegerPartition({1, 3, 1}).to_string() == "(3,1,1)");
  CHECK(IntegerPartition({1, 3, 1}).multiplicity(1) == 2);
}

TEST_CASE("epsf_probability examples") {
  const auto half = PdParams::make(0.5, 0.5);
  CHECK(std::abs(epsf_probability(half, IntegerPartition({1})) - 1.0) < 1e-15);
  CHECK(std::abs(epsf_probability(half, IntegerPartition({2})) - 1.0 / 3) < 1e-14);
  for (auto [a, t] : {std::pair{0.2, 3.0}, {0.7, -0.3}, {0.0, 2.0}})
    CHECK(std::abs(epsf_probability(PdParams::make(a, t), IntegerPartition({2})) - (1 - a) / (1 + t)) < 1e-14);
  CHECK(std::abs(epsf_probability(PdParams::make(0.0, 1.0), IntegerPartition({1, 1, 1})) - 1.0 / 6) < 1e-14);
}

TEST_CASE("epsf_probability against the direct formula") {
  for (auto [a, t] : {std::pair{0.3, 0.7}, {0.5, 2.0}, {0.8, -0.2}, {0.0, 1.5}, {0.4, 0.0}})
    for (const auto& parts : oracle::partitions(9)) {
      const double mine = epsf_probability(PdParams::make(a, t), IntegerPartition(parts));
      CHECK(std::abs(mine - oracle::epsf(a, t, parts)) < 1e-12);
    }
  // continuity at alpha = 0
  for (const auto& parts : oracle::partitions(7))
    CHECK(std::abs(epsf_probability(PdParams::make(1e-8, 1.3), IntegerPartition(parts)) -
                   oracle::epsf(0.0, 1.3, parts)) < 1e-6);
}

TEST_CASE("epsf normalization and finite support") {
  for (double a : {0.0, 0.3, 0.5, 0.8})
    for (double t : {-a / 2, 0.0, 0.5, 2.0}) {
      if (a == 0.0 && t <= 0.0) continue;
      const auto p = PdParams::make(a, t);
      for (int n = 1; n <= 20; ++n) CHECK(std::abs(epsf_sums(p, n).total - 1.0) < 1e-10);
    }
  const auto f = PdParams::finite(0.7, 3);
  double in_support = 0.0;
  for (const auto& lam : enumerate_partitions(7)) {
    const double m = epsf_probability(f, lam);
    if (lam.length() > 3)
      CHECK(m == 0.0);
    else
      in_support += m;
  }
  CHECK(std::abs(in_support - 1.0) < 1e-12);
}

TEST_CASE("epsf_probability against the urn") {
  const auto p = PdParams::make(0.4, 1.2);
  RngStream rng(3);
  std::map<std::vector<int>, int> counts;
  const int runs = 100000;
  for (int i = 0; i < runs; ++i) ++counts[sample_crp_partition(p, 4, rng).parts()];
  for (const auto& parts : oracle::partitions(4)) {
    const double q = oracle::epsf(0.4, 1.2, parts);
    const double f = static_cast<double>(counts[parts]) / runs;
    CHECK(std::abs(f - q) <= 3.5 * std::sqrt(q * (1 - q) / runs));
  }
}

TEST_CASE("block sums") {
  const auto half = PdParams::make(0.5, 0.5);
  CHECK(std::abs(epsf_weighted_block_sum(half, 1) - 1.0) < 1e-14);
  CHECK(std::abs(epsf_weighted_block_sum(half, 2) - 5.0 / 3) < 1e-14);
  const auto q = PdParams::make(0.3, 1.1);
  CHECK(std::abs(epsf_weighted_block_sum(q, 2) - (1 + 0.3 + 2 * 1.1) / 2.1) < 1e-14);
  CHECK(std::abs(epsf_weighted_block_sum(half, 5) - expected_block_sum_closed_form(half, 5)) < 1e-8);

  CHECK(std::abs(expected_structural_moment(half, 1) - 2.0 / 3) < 1e-13);
  CHECK(std::abs(expected_structural_moment(q, 1) - (1.1 + 0.3) / 2.1) < 1e-13);
  CHECK(std::abs(expected_structural_moment(half, 2) - 0.5 * 16.0 / 15) < 1e-13);
  double prev = 1.0;
  for (int n = 1; n < 200; ++n) {
    const double v = expected_structural_moment(q, n);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(expected_structural_moment(PdParams::make(0.0, 1.0), 2), UnsupportedRegime);
  CHECK_THROWS_AS(expected_block_sum_closed_form(PdParams::make(0.0, 1.0), 2), UnsupportedRegime);

  for (double t : {0.3, 1.0, 4.0, -0.1})
    CHECK(std::abs(expected_block_sum_closed_form(PdParams::make(0.6, t), 1) - 1.0) < 1e-12);
  CHECK(std::abs(expected_block_sum_closed_form(half, 2) - 5.0 / 3) < 1e-12);

  for (double a : {0.2, 0.5, 0.8})
    for (double t : {-a / 2, 0.0, 0.5, 2.0}) {
      const auto p = PdParams::make(a, t);
      for (int n = 1; n <= 40; ++n)
        CHECK(std::abs(epsf_weighted_block_sum(p, n) - expected_block_sum_closed_form(p, n)) < 1e-8);
    }

  double lo = 1e300, hi = 0.0;
  for (int n : {100, 1000, 10000, 100000}) {
    const double r = expected_block_sum_closed_form(half, n) / std::pow(n, 0.5);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(hi / lo < 2.0);
  CHECK_THROWS_AS(epsf_weighted_block_sum(half, 61), CapacityError);
}

TEST_CASE("epsf_sums serial and parallel agree bit-for-bit") {
  const auto p = PdParams::make(0.35, 0.9);
  for (int n : {5, 18, 30}) {
    const auto s = epsf_sums(p, n, Execution::Serial);
    const auto q = epsf_sums(p, n, Execution::Parallel);
    CHECK(s.total == q.total);
    CHECK(s.weighted_blocks == q.weighted_blocks);
  }
}
