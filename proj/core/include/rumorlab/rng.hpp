#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <random>
#include <utility>

namespace rumorlab {

/// SplitMix64 finalizer; used to derive independent per-trial seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Random stream owned by one simulation trial.
///
/// All draws are built directly on the 64-bit Mersenne Twister output rather
/// than on <random> distributions, so a given seed yields the same stream on
/// every standard library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Stream for trial `trial` of an experiment with seed `master_seed`.
  /// Depends only on the pair, never on which worker runs the trial.
  static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial);

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform();

  /// Uniform integer in [0, n); n must be positive.
  std::size_t below(std::size_t n);

  /// Exponential variate with the given rate.
  double exponential(double rate);

  bool bernoulli(double p) { return uniform() < p; }

  template <std::random_access_iterator It>
  void shuffle(It first, It last) {
    auto n = static_cast<std::size_t>(last - first);
    for (std::size_t i = n; i > 1; --i) {
      std::size_t j = below(i);
      using std::swap;
      swap(first[i - 1], first[j]);
    }
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace rumorlab
