#pragma once

// Seeded randomness with a fixed cross-platform sequence. std::mt19937_64 has
// a standard-specified output sequence, but the <random> distributions do not,
// so the integer draws below are implemented directly.

#include <cstdint>
#include <random>
#include <string>

namespace brank {

class Prng {
 public:
  explicit Prng(std::uint64_t seed) : eng_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, n) via rejection; n >= 1.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n * (UINT64_MAX / n);
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform integer in [lo, hi] inclusive.
  long long int_in(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Uniform double in [0,1) with 53 random bits.
  double unit_double() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double double_in(double lo, double hi) { return lo + (hi - lo) * unit_double(); }

 private:
  std::mt19937_64 eng_;
  std::uint64_t seed_;
};

// Stable stream splitting: child seed from a parent seed and a label.
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t label) {
  std::uint64_t z = parent ^ (0x9e3779b97f4a7c15ULL + label * 0xbf58476d1ce4e5b9ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a over bytes; used for content digests of JSON artifacts.
inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

}  // namespace brank
