#pragma once

#include <cmath>
#include <cstdint>

namespace sigbasis {

// Counter-style seedable generator: a 64-bit splitmix walk whose start state
// mixes a seed with a stream number. Stream k of a given seed is decorrelated
// from stream j != k, so one generator per path index gives batches that are
// reproducible under any scheduling of the work.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : state_(mix(seed ^ mix(0x9E3779B97F4A7C15ull * (stream + 1)))) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  // uniform on (0, 1]: 53 mantissa bits, never zero so logs are safe
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // standard Gaussian via Box-Muller; the second draw of each pair is cached
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // one-way mix for deriving independent sub-seeds (test set vs batches)
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
    return mix(mix(seed) ^ mix(0xD1B54A32D192ED03ull * (salt + 1)));
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sigbasis
