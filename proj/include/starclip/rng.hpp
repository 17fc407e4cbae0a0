#pragma once

#include <cstdint>
#include <random>

namespace starclip::rng {

// splitmix64 finalizer; stretches (base, index) into independent streams.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Unbiased draw from [0, m) via equal-width buckets with rejection.
inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t m) {
  std::uint64_t bucket = ~std::uint64_t{0} / m;
  std::uint64_t limit = bucket * m;
  for (;;) {
    std::uint64_t x = g();
    if (x < limit) return x / bucket;
  }
}

}  // namespace starclip::rng
