// Copyright 2026 The domcheck authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "domcheck/errors.hpp"
#include "domcheck/rational.hpp"

namespace domcheck {

/// Finite-dimensional weighted-l1 space: a dimension plus strictly positive
/// trace weights w. Fixes the trace tau(x) = sum_i w_i x_i and the norm
/// ||x|| = sum_i w_i |x_i|. Immutable; shared by vectors and operators.
class Space {
 public:
  /// Unit weights (the counting trace).
  explicit Space(int dim) : dim_(dim), weights_(check_dim(dim), Rational(1)) {}

  Space(int dim, std::vector<Rational> weights)
      : dim_(dim), weights_(std::move(weights)) {
    check_dim(dim);
    if (static_cast<int>(weights_.size()) != dim_)
      throw dimension_error("space expects " + std::to_string(dim_) +
                            " weights, got " + std::to_string(weights_.size()));
    for (const Rational& w : weights_)
      if (w.sign() <= 0)
        throw positivity_error("trace weights must be strictly positive");
  }

  int dim() const { return dim_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& weight(int i) const { return weights_[static_cast<size_t>(i)]; }
  bool unit_weights() const {
    for (const Rational& w : weights_)
      if (!(w == Rational(1))) return false;
    return true;
  }

  friend bool operator==(const Space& a, const Space& b) {
    return a.dim_ == b.dim_ && a.weights_ == b.weights_;
  }

 private:
  static size_t check_dim(int dim) {
    if (dim < 1) throw dimension_error("space dimension must be >= 1");
    return static_cast<size_t>(dim);
  }

  int dim_;
  std::vector<Rational> weights_;
};

using SpacePtr = std::shared_ptr<const Space>;

inline SpacePtr make_space(int dim) { return std::make_shared<const Space>(dim); }
inline SpacePtr make_space(int dim, std::vector<Rational> weights) {
  return std::make_shared<const Space>(dim, std::move(weights));
}

/// True when the two handles denote the same space (cheap pointer check first).
inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

/// An element of the weighted-l1 space: exact rational coordinates.
struct Vec1 {
  SpacePtr space;
  std::vector<Rational> coords;

  Vec1(SpacePtr s, std::vector<Rational> c)
      : space(std::move(s)), coords(std::move(c)) {
    if (!space) throw dimension_error("vector without a space");
    if (static_cast<int>(coords.size()) != space->dim())
      throw dimension_error("vector length " + std::to_string(coords.size()) +
                            " does not match space dimension " +
                            std::to_string(space->dim()));
  }

  static Vec1 zero(const SpacePtr& s) {
    return Vec1(s, std::vector<Rational>(static_cast<size_t>(s->dim())));
  }

  /// j-th basis direction scaled to unit norm: e_j / w_j.
  static Vec1 unit_basis(const SpacePtr& s, int j) {
    Vec1 v = zero(s);
    v.coords[static_cast<size_t>(j)] = s->weight(j).reciprocal();
    return v;
  }

  int dim() const { return space->dim(); }
  const Rational& operator[](int i) const { return coords[static_cast<size_t>(i)]; }
  Rational& operator[](int i) { return coords[static_cast<size_t>(i)]; }

  friend bool operator==(const Vec1& a, const Vec1& b) {
    return same_space(a.space, b.space) && a.coords == b.coords;
  }
};

inline Vec1 operator+(const Vec1& a, const Vec1& b) {
  if (!same_space(a.space, b.space)) throw dimension_error("vector space mismatch");
  Vec1 r = a;
  for (int i = 0; i < r.dim(); ++i) r[i] += b[i];
  return r;
}

inline Vec1 operator-(const Vec1& a, const Vec1& b) {
  if (!same_space(a.space, b.space)) throw dimension_error("vector space mismatch");
  Vec1 r = a;
  for (int i = 0; i < r.dim(); ++i) r[i] -= b[i];
  return r;
}

inline Vec1 operator*(const Rational& c, const Vec1& x) {
  Vec1 r = x;
  for (int i = 0; i < r.dim(); ++i) r[i] *= c;
  return r;
}

/// tau(x) = sum_i w_i x_i. Linear.
inline Rational trace(const Vec1& x) {
  Rational t;
  for (int i = 0; i < x.dim(); ++i) t += x.space->weight(i) * x[i];
  return t;
}

/// ||x|| = sum_i w_i |x_i|. Zero iff x = 0.
inline Rational norm1(const Vec1& x) {
  Rational t;
  for (int i = 0; i < x.dim(); ++i) t += x.space->weight(i) * x[i].abs();
  return t;
}

inline bool is_positive(const Vec1& x) {
  for (int i = 0; i < x.dim(); ++i)
    if (x[i].sign() < 0) return false;
  return true;
}

/// Coordinatewise x = x+ - x- with disjoint supports; the unique lattice
/// decomposition, so norm1(x) = norm1(x+) + norm1(x-).
inline std::pair<Vec1, Vec1> jordan_decompose(const Vec1& x) {
  Vec1 pos = Vec1::zero(x.space);
  Vec1 neg = Vec1::zero(x.space);
  for (int i = 0; i < x.dim(); ++i) {
    if (x[i].sign() > 0)
      pos[i] = x[i];
    else if (x[i].sign() < 0)
      neg[i] = -x[i];
  }
  return {std::move(pos), std::move(neg)};
}

}  // namespace domcheck
