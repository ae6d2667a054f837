#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdlab/rng.hpp"

namespace pdlab {

struct Check {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// Extra per-n rows for the aux-identity suite.
struct IdentityRow {
  int n;
  double lhs, rhs, abs_err;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  std::vector<IdentityRow> rows;
  bool pass() const;
};

/// Suite inputs. Unset parameters fall back to each suite's default grid.
struct VerifyConfig {
  std::optional<double> alpha, theta, p;
  std::optional<int> n;
  int n_max = 40;
  int max_degree = 0;  // 0: suite default
  std::optional<std::size_t> paths;
  std::optional<int> truncation;
  std::optional<double> dt;
  std::uint64_t seed = kDefaultSeed;
};

const std::vector<std::string>& suite_names();

/// Runs one suite; throws DomainError for an unknown name. "all" is handled
/// by the caller.
Report verify_suite(std::string_view name, const VerifyConfig& config);

}  // namespace pdlab
