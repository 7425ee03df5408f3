#pragma once

#include <cmath>
#include <cstdint>

namespace m2m::mc {

inline uint64_t splitmix64_next(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deployment-seed splitting rule: seed_i = splitmix64 stream of
/// (root XOR golden-ratio-scrambled index). Documented so runs are
/// reproducible across harness versions.
inline uint64_t derive_seed(uint64_t root_seed, uint64_t index) {
  uint64_t s = root_seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  return splitmix64_next(s);
}

/// xoshiro256++ bit generator.
class Xoshiro256pp {
 public:
  using result_type = uint64_t;
  explicit Xoshiro256pp(uint64_t seed = 1) {
    uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64_next(sm);
  }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ULL; }
  result_type operator()() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }
  double uniform() { return ((*this)() >> 11) * 0x1.0p-53; }
  double exponential() { return -std::log1p(-uniform()); }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

}  // namespace m2m::mc
