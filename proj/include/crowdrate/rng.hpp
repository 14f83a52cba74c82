#pragma once

#include <cstdint>
#include <random>

namespace crowdrate {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// mt19937_64 seeded from (seed, stream). Uniforms come from the top 53 bits so
/// a stream is bit-identical on every standard library.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream)
      : engine_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  /// Fair coin from a cached word, one engine call per 64 flips.
  bool coin() {
    if (bitsLeft_ == 0) {
      bits_ = engine_();
      bitsLeft_ = 64;
    }
    const bool out = bits_ & 1U;
    bits_ >>= 1;
    --bitsLeft_;
    return out;
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t bits_ = 0;
  int bitsLeft_ = 0;
};

}  // namespace crowdrate
