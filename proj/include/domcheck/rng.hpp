// Copyright 2026 The domcheck authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "domcheck/rational.hpp"

namespace domcheck {

/// SplitMix64 (Steele/Lea/Vigna). Used for every random draw in the library:
/// campaigns must be bit-reproducible across platforms and standard-library
/// versions, which rules out std:: distributions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n), n >= 1. Multiply-shift; the O(2^-64) bias is
  /// irrelevant here, determinism is what matters.
  std::uint64_t bounded(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  int bounded_int(int n) { return static_cast<int>(bounded(static_cast<std::uint64_t>(n))); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Exact Bernoulli(p) for rational p in [0, 1].
  bool coin(const Rational& p) {
    if (p.sign() <= 0) return false;
    if (p >= Rational(1)) return true;
    const std::uint64_t den = p.denominator().get_ui();
    const std::uint64_t num = p.numerator().get_ui();
    return bounded(den) < num;
  }

 private:
  std::uint64_t state_;
};

/// Derives an independent per-task seed from (master, index); tasks seeded
/// this way may run in any order or in parallel.
inline std::uint64_t subseed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 mix(master ^ (0xA0761D6478BD642FULL + index * 0xE7037ED1A0B428DBULL));
  mix.next();
  return mix.next();
}

/// Uniform rational on the magnitude grid {0, 1/grid, ..., grid/grid}, with an
/// extra zero mass of `density`. grid is the denominator bound from the
/// campaign config.
inline Rational rand_grid_rational(SplitMix64& rng, int grid,
                                   const Rational& density) {
  if (grid < 1) throw config_error("magnitude grid must be >= 1");
  if (rng.coin(density)) return Rational(0);
  const long k = static_cast<long>(rng.bounded(static_cast<std::uint64_t>(grid) + 1));
  return Rational(k, grid);
}

}  // namespace domcheck
