#include "pdlab/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace pdlab {

IntegerPartition::IntegerPartition(std::vector<int> parts) : parts_(std::move(parts)) {
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  for (int p : parts_) {
    if (p <= 0) throw DomainError("IntegerPartition: parts must be positive");
    n_ += p;
    if (!mult_.empty() && mult_.back().first == p)
      ++mult_.back().second;
    else
      mult_.emplace_back(p, 1);
  }
}

int IntegerPartition::multiplicity(int k) const noexcept {
  for (const auto& [len, count] : mult_)
    if (len == k) return count;
  return 0;
}

std::string IntegerPartition::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ')';
  return os.str();
}

std::uint64_t partition_count(int m) {
  if (m < 0) throw DomainError("partition_count: m must be non-negative");
  if (m > 405) throw CapacityError("partition_count: pi(m) overflows 64 bits for m > 405");
  // p(n) = sum_{k>=1} (-1)^{k+1} [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)]
  std::vector<__int128> p(static_cast<std::size_t>(m) + 1, 0);
  p[0] = 1;
  for (int n = 1; n <= m; ++n) {
    __int128 s = 0;
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      if (g1 > n) break;
      const int g2 = k * (3 * k + 1) / 2;
      const __int128 term = p[n - g1] + (g2 <= n ? p[n - g2] : 0);
      s += (k % 2 == 1) ? term : -term;
    }
    p[n] = s;
  }
  return static_cast<std::uint64_t>(p[m]);
}

std::vector<IntegerPartition> enumerate_partitions(int n) {
  if (n < 1) throw DomainError("enumerate_partitions: n must be positive");
  if (n > kMaxEnumerationSize)
    throw CapacityError("enumerate_partitions: n = " + std::to_string(n) + " exceeds the guard " +
                        std::to_string(kMaxEnumerationSize));
  std::vector<IntegerPartition> out;
  out.reserve(partition_count(n));
  for_each_partition(n, [&](std::span<const int> parts) {
    out.emplace_back(std::vector<int>(parts.begin(), parts.end()));
  });
  return out;
}

namespace {

double ewens_probability(double theta, const IntegerPartition& lambda) {
  // n! theta^l / (prod_k k^{m_k} m_k! * theta (theta+1) ... (theta+n-1))
  const int n = lambda.size();
  double log_p = log_gamma(n + 1.0) + lambda.length() * std::log(theta) - log_rising(theta, n);
  for (const auto& [k, count] : lambda.row_multiplicities())
    log_p -= count * std::log(static_cast<double>(k)) + log_gamma(count + 1.0);
  return std::exp(log_p);
}

}  // namespace

EpsfTable::EpsfTable(const PdParams& params, int n) : n_(n) {
  if (n < 1) throw DomainError("EpsfTable: n must be positive");
  const double alpha = params.alpha();
  const double theta = params.theta();
  log_fact_.resize(static_cast<std::size_t>(n) + 1);
  log_fact_[0] = 0.0;
  for (int k = 1; k <= n; ++k) log_fact_[k] = log_fact_[k - 1] + std::log(static_cast<double>(k));
  log_norm_ = log_fact_[n] - log_rising(theta + 1.0, n - 1);

  log_blocks_.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (int l = 2; l <= n; ++l) {
    const double factor = theta + (l - 1) * alpha;
    // Only the finite case reaches zero (theta + m alpha = 0); beyond that
    // every block count has probability zero.
    log_blocks_[l] = (factor > 0.0 && log_blocks_[l - 1] > -std::numeric_limits<double>::infinity())
                         ? log_blocks_[l - 1] + std::log(factor)
                         : -std::numeric_limits<double>::infinity();
  }
  log_row_.assign(static_cast<std::size_t>(n) + 1, 0.0);
  double rising = 0.0;  // log (1-alpha)_{k-1}
  for (int k = 1; k <= n; ++k) {
    if (k >= 2) rising += std::log(k - 1 - alpha);
    log_row_[k] = rising - log_fact_[k];
  }
}

double EpsfTable::probability(std::span<const int> parts) const {
  const auto l = parts.size();
  const double lb = log_blocks_[l];
  if (lb == -std::numeric_limits<double>::infinity()) return 0.0;
  double s = log_norm_ + lb;
  std::size_t i = 0;
  while (i < l) {
    std::size_t j = i;
    while (j < l && parts[j] == parts[i]) ++j;
    s += static_cast<double>(j - i) * log_row_[parts[i]] - log_fact_[j - i];
    i = j;
  }
  return std::exp(s);
}

double epsf_probability(const PdParams& params, const IntegerPartition& lambda) {
  if (lambda.size() < 1) throw DomainError("epsf_probability: empty partition");
  if (params.is_finite() && lambda.length() > params.finite_m()) return 0.0;
  if (params.alpha() == 0.0) return ewens_probability(params.theta(), lambda);
  return EpsfTable(params, lambda.size()).probability(lambda.parts());
}

EpsfSums epsf_sums(const PdParams& params, int n, Execution mode) {
  if (n < 1) throw DomainError("epsf_sums: n must be positive");
  if (n > kMaxEnumerationSize)
    throw CapacityError("epsf_sums: n = " + std::to_string(n) + " exceeds the guard " +
                        std::to_string(kMaxEnumerationSize));
  const EpsfTable table(params, n);
  // Slot k-1 holds the partitions whose largest part is k.
  std::vector<EpsfSums> slots(static_cast<std::size_t>(n));
  run_indexed(mode, slots.size(), [&](std::size_t idx) {
    const int first = n - static_cast<int>(idx);
    std::vector<int> buf{first};
    EpsfSums acc;
    auto visit = [&](std::span<const int> rest) {
      buf.resize(1);
      buf.insert(buf.end(), rest.begin(), rest.end());
      const double p = table.probability(buf);
      acc.total += p;
      acc.weighted_blocks += p * static_cast<double>(buf.size());
    };
    for_each_partition(n - first, first, 1, visit);
    slots[idx] = acc;
  });
  EpsfSums out;
  for (const auto& s : slots) {
    out.total += s.total;
    out.weighted_blocks += s.weighted_blocks;
  }
  return out;
}

double epsf_weighted_block_sum(const PdParams& params, int n) {
  return epsf_sums(params, n).weighted_blocks;
}

namespace {

void require_positive_alpha(const PdParams& params, const char* op) {
  if (params.is_finite())
    throw UnsupportedRegime(std::string(op) + ": two-parameter regime only");
  if (!(params.alpha() > 0.0))
    throw UnsupportedRegime(std::string(op) + ": requires 0 < alpha < 1");
}

}  // namespace

double expected_structural_moment(const PdParams& params, int n) {
  require_positive_alpha(params, "expected_structural_moment");
  if (n < 0) throw DomainError("expected_structural_moment: n must be non-negative");
  const double a = params.alpha();
  const double t = params.theta();
  // C1 = Gamma(theta+1) / (Gamma(theta+alpha) Gamma(1-alpha)); the Gamma(1-alpha)
  // cancels against Beta(1-alpha, alpha+theta+n).
  return std::exp(log_gamma(t + 1.0) - log_gamma(t + a) + log_gamma(a + t + n) -
                  log_gamma(t + 1.0 + n));
}

double expected_block_sum_closed_form(const PdParams& params, int n) {
  require_positive_alpha(params, "expected_block_sum_closed_form");
  if (n < 1) throw DomainError("expected_block_sum_closed_form: n must be positive");
  const double t = params.theta();
  return ((t + n) * expected_structural_moment(params, n) - t) / params.alpha();
}

}  // namespace pdlab
