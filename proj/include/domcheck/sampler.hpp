// Copyright 2026 The domcheck authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "domcheck/norms.hpp"
#include "domcheck/rng.hpp"

namespace domcheck {

/// The theorem's hypothesis object: positive contractions with T <= S.
struct DominatedPair {
  Operator S;
  Operator T;

  /// Re-checks the construction invariants; used as a per-trial assertion.
  bool valid() const {
    return is_positive(T) && dominates(S, T) &&
           operator_norm_1(S) <= Rational(1) &&
           operator_norm_1(T) <= Rational(1);
  }
};

struct SamplerParams {
  int magnitude_grid = 8;                    // entries drawn on {0..grid}/grid
  Rational density = Rational(1, 3);         // probability of a zero entry
  Rational stochastic_fraction = Rational(1, 4);  // exactly-stochastic columns
};

/// Draws (S, T) with T >= 0, S = T + D for D >= 0, then rescales columns so
/// every weighted column sum of S is <= 1; T's column gets the same factor,
/// which preserves T <= S. A configurable fraction of columns is rescaled to
/// weighted sum exactly 1 -- boundary pairs are where the theorem has content.
inline DominatedPair sample_dominated_pair(const SpacePtr& space,
                                           SplitMix64& rng,
                                           const SamplerParams& params = {}) {
  const int n = space->dim();
  Operator t = Operator::zero(space);
  Operator s = Operator::zero(space);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      t.at(i, j) = rand_grid_rational(rng, params.magnitude_grid, params.density);
      s.at(i, j) =
          t.at(i, j) + rand_grid_rational(rng, params.magnitude_grid, params.density);
    }
  for (int j = 0; j < n; ++j) {
    Rational col;
    for (int i = 0; i < n; ++i) col += space->weight(i) * s.at(i, j);
    col /= space->weight(j);
    const bool pin_to_one = rng.coin(params.stochastic_fraction) && col.sign() > 0;
    if (!pin_to_one && col <= Rational(1)) continue;
    const Rational factor = col.reciprocal();
    for (int i = 0; i < n; ++i) {
      s.at(i, j) *= factor;
      t.at(i, j) *= factor;
    }
  }
  return DominatedPair{std::move(s), std::move(t)};
}

/// Unweighted convenience form (the paper's counting trace).
inline DominatedPair sample_dominated_pair(int dim, SplitMix64& rng,
                                           const SamplerParams& params = {}) {
  return sample_dominated_pair(make_space(dim), rng, params);
}

/// Strictly positive weights a/b with a, b in [1, grid]; for weighted-space
/// test campaigns.
inline std::vector<Rational> sample_weights(int dim, SplitMix64& rng, int grid = 8) {
  std::vector<Rational> w;
  w.reserve(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    const long a = 1 + static_cast<long>(rng.bounded(static_cast<std::uint64_t>(grid)));
    const long b = 1 + static_cast<long>(rng.bounded(static_cast<std::uint64_t>(grid)));
    w.emplace_back(a, b);
  }
  return w;
}

/// Random positive matrix with entries on the grid; not normalized.
inline Operator sample_positive_operator(const SpacePtr& space, SplitMix64& rng,
                                         const SamplerParams& params = {}) {
  const int n = space->dim();
  Operator m = Operator::zero(space);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = rand_grid_rational(rng, params.magnitude_grid, params.density);
  return m;
}

/// Random signed matrix: grid magnitudes with random signs.
inline Operator sample_signed_operator(const SpacePtr& space, SplitMix64& rng,
                                       const SamplerParams& params = {}) {
  Operator m = sample_positive_operator(space, rng, params);
  const int n = space->dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rng.bounded(2) == 1) m.at(i, j) = -m.at(i, j);
  return m;
}

/// Random nonzero signed vector, exactly normalized to norm1 == 1.
inline Vec1 sample_unit_vector(const SpacePtr& space, SplitMix64& rng,
                               int grid = 8) {
  Vec1 x = Vec1::zero(space);
  while (true) {
    for (int i = 0; i < space->dim(); ++i) {
      const long k = static_cast<long>(rng.bounded(static_cast<std::uint64_t>(grid) + 1));
      x[i] = Rational(rng.bounded(2) == 1 ? -k : k, grid);
    }
    const Rational n = norm1(x);
    if (n.sign() > 0) return n.reciprocal() * x;
  }
}

/// Random positive vector with at least one nonzero coordinate.
inline Vec1 sample_positive_vector(const SpacePtr& space, SplitMix64& rng,
                                   int grid = 8) {
  Vec1 x = Vec1::zero(space);
  while (true) {
    bool nonzero = false;
    for (int i = 0; i < space->dim(); ++i) {
      const long k = static_cast<long>(rng.bounded(static_cast<std::uint64_t>(grid) + 1));
      x[i] = Rational(k, grid);
      nonzero = nonzero || k != 0;
    }
    if (nonzero) return x;
  }
}

}  // namespace domcheck
