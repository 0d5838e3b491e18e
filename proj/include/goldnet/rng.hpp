#pragma once

#include <cstdint>
#include <random>

namespace goldnet {

// SplitMix64 finalizer; used only to derive independent seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// seed of stream `index` under `master`
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

inline constexpr const char* kSeedDerivationRule =
    "seed_i = mix64(mix64(master) + 0x9e3779b97f4a7c15 * (i + 1)), mix64 = SplitMix64 finalizer; "
    "engine = std::mt19937_64";

// 64-bit Mersenne Twister with draw conversions pinned here rather than left
// to the standard library's distributions, whose algorithms vary by vendor.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // [0, 1) with 53 random bits
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, bound), bound > 0; Lemire's multiply-shift with rejection
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace goldnet
