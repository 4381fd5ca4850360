#pragma once

#include <cstdint>

namespace pcs {

inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// xoshiro256** seeded via splitmix64.  Every shot of a Monte Carlo run gets
/// its own stream derived from (master seed, shot index), so partitioning
/// shots across workers cannot change any result: merging is summation over
/// per-shot outcomes that are fixed by the master seed alone.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }
  static Rng for_shot(uint64_t master_seed, uint64_t shot_index) {
    uint64_t sm = master_seed;
    uint64_t mixed = splitmix64(sm) ^ (0x9e3779b97f4a7c15ull * (shot_index + 1));
    return Rng(mixed);
  }

  uint64_t next_u64() {
    auto rotl = [](uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform in [0, 1).
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  bool next_bit() { return (next_u64() >> 63) != 0; }

 private:
  uint64_t s_[4];
};

}  // namespace pcs
