#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace starclip::bits {

inline int word_count(int nbits) { return (nbits + 63) / 64; }

inline bool test(const std::uint64_t* w, int i) {
  return (w[i >> 6] >> (i & 63)) & 1u;
}

inline void set(std::uint64_t* w, int i) {
  w[i >> 6] |= std::uint64_t{1} << (i & 63);
}

inline void reset(std::uint64_t* w, int i) {
  w[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
}

inline int popcount(const std::uint64_t* w, int words) {
  int c = 0;
  for (int i = 0; i < words; ++i) c += std::popcount(w[i]);
  return c;
}

// First set bit at index >= from, or -1.
inline int next_set(const std::uint64_t* w, int words, int from) {
  if (from < 0) from = 0;
  int wi = from >> 6;
  if (wi >= words) return -1;
  std::uint64_t cur = w[wi] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (cur != 0) return wi * 64 + std::countr_zero(cur);
    if (++wi >= words) return -1;
    cur = w[wi];
  }
}

// n-bit vector backed by 64-bit words.
struct BitVec {
  int n = 0;
  std::vector<std::uint64_t> w;

  BitVec() = default;
  explicit BitVec(int nbits) : n(nbits), w(word_count(nbits), 0) {}

  bool test(int i) const { return bits::test(w.data(), i); }
  void set(int i) { bits::set(w.data(), i); }
  void reset(int i) { bits::reset(w.data(), i); }
  void clear() { std::fill(w.begin(), w.end(), 0); }
  int count() const { return popcount(w.data(), static_cast<int>(w.size())); }
  int next(int from) const {
    return next_set(w.data(), static_cast<int>(w.size()), from);
  }
  bool operator==(const BitVec&) const = default;
};

}  // namespace starclip::bits
