#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pdlab::stats {

/// Running mean and standard error (Welford).
class MeanAccumulator {
 public:
  void add(double x);
  void merge(const MeanAccumulator& other);
  std::size_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  double variance() const;
  double standard_error() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// True when |estimate - expected| <= k * se.
bool within_se(double estimate, double expected, double se, double k = 3.0);

/// Two-sided one-sample Kolmogorov-Smirnov statistic sup |F_n - F|.
/// The samples are sorted in place.
double ks_statistic(std::vector<double>& samples, const std::function<double(double)>& cdf);

/// Same statistic from the CDF already evaluated at the sorted samples.
double ks_statistic_sorted(std::span<const double> cdf_at_sorted);

/// Asymptotic Kolmogorov tail P(K > x).
double kolmogorov_survival(double x);

/// Critical value of the KS statistic at the given significance for n
/// samples, with Stephens' finite-sample correction.
double ks_critical(std::size_t n, double significance);

double chi_square_statistic(std::span<const double> observed, std::span<const double> expected);
double chi_square_critical(int dof, double significance);

}  // namespace pdlab::stats
