// Copyright 2026 The anticonc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>

namespace anticonc {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Counter-based generator: the stream is a pure function of (seed, stream id),
/// so sample j sees the same numbers regardless of which thread draws it.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(seed + kGolden * mix64(stream + kGolden))) {}

  constexpr std::uint64_t operator()() { return mix64(key_ + kGolden * ++counter_); }

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Bin(k, 1/2) as the popcount of k fair bits.
inline int draw_binomial(CounterRng& rng, int k) {
  int total = 0;
  while (k >= 64) {
    total += std::popcount(rng());
    k -= 64;
  }
  if (k > 0) total += std::popcount(rng() & ((std::uint64_t{1} << k) - 1));
  return total;
}

}  // namespace anticonc
