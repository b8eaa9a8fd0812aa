#pragma once

#include <cstdint>
#include <vector>

#include "polyagent/dist.hpp"

namespace polyagent {

// splitmix64, used for seeding and stream derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Stream seed for trajectory `index` under a run seed. Batch runs derive
// one stream per trajectory so results are independent of scheduling.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ (0xA0761D6478BD642Full * (index + 1));
  return splitmix64(s);
}

// xoshiro256**, seeded via splitmix64. Deterministic across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) word = splitmix64(s);
  }

  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(derive_stream_seed(seed, index));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0,1) with 53 bits of precision.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Categorical sample by CDF walk; the final positive entry absorbs any
  // float slack in the row sum.
  std::size_t sample(const std::vector<double>& mass) {
    const double u = next_unit();
    double acc = 0.0;
    std::size_t last_positive = 0;
    bool seen = false;
    for (std::size_t i = 0; i < mass.size(); ++i) {
      if (mass[i] > 0.0) {
        last_positive = i;
        seen = true;
      }
      acc += mass[i];
      if (u < acc) return i;
    }
    if (!seen) return mass.empty() ? 0 : mass.size() - 1;
    return last_positive;
  }

  std::size_t sample(const Dist& d) { return sample(d.mass); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace polyagent
