// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace lipognn {

// xoshiro256** with splitmix64 seeding. Hand-rolled so that seeded runs are
// reproducible bit-for-bit across platforms and standard library versions
// (std::shuffle and std::uniform_*_distribution make no such promise).
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) {
      // splitmix64
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      word = z ^ (z >> 31);
    }
  }

  std::uint64_t operator()() {
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

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  std::uint64_t next_below(std::uint64_t bound) { return (*this)() % bound; }

  // uniform in [0, 1)
  double next_double() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  // uniform in [lo, hi)
  double next_double(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

// Deterministic Fisher-Yates shuffle.
template <typename T>
void shuffle(std::vector<T>& items, Xoshiro256& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = rng.next_below(i);
    std::swap(items[i - 1], items[j]);
  }
}

inline std::vector<int> identity_permutation(int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  return perm;
}

inline std::vector<int> random_permutation(int n, Xoshiro256& rng) {
  std::vector<int> perm = identity_permutation(n);
  shuffle(perm, rng);
  return perm;
}

}  // namespace lipognn
