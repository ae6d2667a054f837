#pragma once

#include <cstdint>
#include <random>

namespace pdlab {

inline constexpr std::uint64_t kDefaultSeed = 20090611;

/// A reproducible random stream addressed by (seed, stream id).
///
/// Identical (seed, stream) pairs produce identical output on the same build.
/// Concurrent workers must each hold a distinct stream id.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed = kDefaultSeed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal();
  double exponential();
  double gamma(double shape);
  double beta(double a, double b);
  /// Index drawn with probability proportional to weights[i].
  template <class Range>
  std::size_t categorical(const Range& weights, double total);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::gamma_distribution<double> gamma_;  // kept so its normal cache survives calls
};

template <class Range>
std::size_t RngStream::categorical(const Range& weights, double total) {
  const double u = uniform() * total;
  double acc = 0.0;
  std::size_t i = 0;
  std::size_t last_positive = 0;
  for (double w : weights) {
    acc += w;
    if (w > 0.0) last_positive = i;
    if (u < acc) return i;
    ++i;
  }
  return last_positive;
}

}  // namespace pdlab
