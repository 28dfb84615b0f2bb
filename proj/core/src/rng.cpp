#include "rumorlab/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rumorlab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::for_trial(std::uint64_t master_seed, std::uint64_t trial) {
  return Rng(splitmix64(splitmix64(master_seed) ^ splitmix64(trial + 0x632be59bd9b4e019ULL)));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::below(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: empty range");
  // Lemire's nearly-divisionless method.
  std::uint64_t x = engine_();
  __uint128_t m = static_cast<__uint128_t>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    std::uint64_t threshold = (0 - static_cast<std::uint64_t>(n)) % n;
    while (low < threshold) {
      x = engine_();
      m = static_cast<__uint128_t>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::size_t>(m >> 64);
}

double Rng::exponential(double rate) {
  // 1 - uniform() lies in (0, 1], so the log is finite.
  return -std::log(1.0 - uniform()) / rate;
}

}  // namespace rumorlab
