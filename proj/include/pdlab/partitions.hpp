#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pdlab/core.hpp"
#include "pdlab/parallel.hpp"

namespace pdlab {

/// Largest n accepted by the exact enumeration routines (pi(60) = 966467).
inline constexpr int kMaxEnumerationSize = 60;

/// An integer partition (Young diagram) with its row multiplicities.
class IntegerPartition {
 public:
  IntegerPartition() = default;
  /// Any order of positive parts; stored descending.
  explicit IntegerPartition(std::vector<int> parts);

  const std::vector<int>& parts() const noexcept { return parts_; }
  /// |lambda|
  int size() const noexcept { return n_; }
  /// l(lambda), the number of rows.
  int length() const noexcept { return static_cast<int>(parts_.size()); }
  /// Pairs (k, [lambda:k]) for every row length k present, k descending.
  const std::vector<std::pair<int, int>>& row_multiplicities() const noexcept { return mult_; }
  /// [lambda:k]
  int multiplicity(int k) const noexcept;

  std::string to_string() const;

  friend bool operator==(const IntegerPartition& a, const IntegerPartition& b) {
    return a.parts_ == b.parts_;
  }
  friend auto operator<=>(const IntegerPartition& a, const IntegerPartition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
  std::vector<std::pair<int, int>> mult_;
  int n_ = 0;
};

/// pi(m) by Euler's pentagonal-number recurrence; exact for m <= 405.
std::uint64_t partition_count(int m);

namespace detail {
template <class Visit>
void partitions_rec(std::vector<int>& buf, int remaining, int max_part, int min_part, Visit& visit) {
  if (remaining == 0) {
    visit(std::span<const int>(buf));
    return;
  }
  for (int k = std::min(remaining, max_part); k >= min_part; --k) {
    if (remaining - k != 0 && remaining - k < min_part) continue;
    buf.push_back(k);
    partitions_rec(buf, remaining - k, k, min_part, visit);
    buf.pop_back();
  }
}
}  // namespace detail

/// Visits every partition of n with parts in [min_part, max_part], in
/// reverse-lexicographic order, as a descending span of parts. The span is
/// only valid during the call.
template <class Visit>
void for_each_partition(int n, int max_part, int min_part, Visit&& visit) {
  std::vector<int> buf;
  buf.reserve(static_cast<std::size_t>(n) + 1);
  if (n == 0) {
    visit(std::span<const int>(buf));
    return;
  }
  detail::partitions_rec(buf, n, max_part, min_part, visit);
}

template <class Visit>
void for_each_partition(int n, Visit&& visit) {
  for_each_partition(n, n, 1, visit);
}

/// All partitions of n (1 <= n <= 60), reverse-lexicographic.
std::vector<IntegerPartition> enumerate_partitions(int n);

/// Exchangeable partition probability M_n(lambda).
double epsf_probability(const PdParams& params, const IntegerPartition& lambda);

/// Precomputed log-factors of M_n for a fixed (params, n); evaluates M_n on
/// a bare descending parts span without building an IntegerPartition.
class EpsfTable {
 public:
  EpsfTable(const PdParams& params, int n);
  int n() const noexcept { return n_; }
  double probability(std::span<const int> parts) const;

 private:
  int n_;
  double log_norm_;                  // log n! - log (theta+1)_{n-1}
  std::vector<double> log_blocks_;   // [l] = sum_{j<l-1} log(theta + (j+1) alpha); -inf if zero
  std::vector<double> log_row_;      // [k] = log (1-alpha)_{k-1} - log k!
  std::vector<double> log_fact_;     // [k] = log k!
};

/// Sum over |lambda| = n of M_n(lambda) and of M_n(lambda) * l(lambda), by
/// exact enumeration. The parallel form splits by the largest part and
/// reduces in a fixed order, so it matches the serial form bit-for-bit.
struct EpsfSums {
  double total = 0.0;
  double weighted_blocks = 0.0;
};
EpsfSums epsf_sums(const PdParams& params, int n, Execution mode = Execution::Parallel);

double epsf_weighted_block_sum(const PdParams& params, int n);

/// E[sum_i rho_i (1 - rho_i)^n] = C1 * Beta(1 - alpha, alpha + theta + n).
double expected_structural_moment(const PdParams& params, int n);

/// [(theta + n) E[sum rho_i (1-rho_i)^n] - theta] / alpha, the closed form of
/// sum_{|lambda|=n} M_n(lambda) l(lambda).
double expected_block_sum_closed_form(const PdParams& params, int n);

}  // namespace pdlab
