// Copyright 2026 The domcheck authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "domcheck/space.hpp"

namespace domcheck {

/// Dense square matrix of exact rationals acting on a Space, column-action
/// convention: (Mx)_i = sum_j M_ij x_j. Row-major storage. Immutable in use;
/// positivity on the standard cone is entrywise nonnegativity.
class Operator {
 public:
  Operator(SpacePtr space, std::vector<Rational> entries)
      : space_(std::move(space)), a_(std::move(entries)) {
    if (!space_) throw dimension_error("operator without a space");
    const size_t n = static_cast<size_t>(space_->dim());
    if (a_.size() != n * n)
      throw dimension_error("operator expects " + std::to_string(n * n) +
                            " entries, got " + std::to_string(a_.size()));
  }

  /// Builds from rows; every row must have length dim.
  static Operator from_rows(SpacePtr space,
                            const std::vector<std::vector<Rational>>& rows) {
    if (!space) throw dimension_error("operator without a space");
    const int n = space->dim();
    if (static_cast<int>(rows.size()) != n)
      throw dimension_error("expected " + std::to_string(n) + " rows, got " +
                            std::to_string(rows.size()));
    std::vector<Rational> flat;
    flat.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != n)
        throw dimension_error("ragged matrix: row of length " +
                              std::to_string(row.size()) + " in a dim-" +
                              std::to_string(n) + " operator");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return Operator(std::move(space), std::move(flat));
  }

  static Operator zero(const SpacePtr& space) {
    const size_t n = static_cast<size_t>(space->dim());
    return Operator(space, std::vector<Rational>(n * n));
  }

  static Operator identity(const SpacePtr& space) {
    Operator m = zero(space);
    for (int i = 0; i < space->dim(); ++i) m.at(i, i) = Rational(1);
    return m;
  }

  const SpacePtr& space() const { return space_; }
  int dim() const { return space_->dim(); }

  const Rational& at(int i, int j) const {
    return a_[static_cast<size_t>(i) * static_cast<size_t>(dim()) +
              static_cast<size_t>(j)];
  }
  Rational& at(int i, int j) {
    return a_[static_cast<size_t>(i) * static_cast<size_t>(dim()) +
              static_cast<size_t>(j)];
  }
  const std::vector<Rational>& entries() const { return a_; }

  friend bool operator==(const Operator& x, const Operator& y) {
    return same_space(x.space_, y.space_) && x.a_ == y.a_;
  }

 private:
  SpacePtr space_;
  std::vector<Rational> a_;
};

inline void require_same_space(const Operator& a, const Operator& b) {
  if (!same_space(a.space(), b.space()))
    throw dimension_error("operators act on different spaces");
}

inline bool is_positive(const Operator& m) {
  for (const Rational& e : m.entries())
    if (e.sign() < 0) return false;
  return true;
}

/// T <= S in the operator order: S - T positive, i.e. entrywise S >= T.
inline bool dominates(const Operator& s, const Operator& t) {
  require_same_space(s, t);
  const int n = s.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (s.at(i, j) < t.at(i, j)) return false;
  return true;
}

inline Vec1 apply(const Operator& m, const Vec1& x) {
  if (!same_space(m.space(), x.space))
    throw dimension_error("operator/vector space mismatch");
  const int n = m.dim();
  Vec1 y = Vec1::zero(m.space());
  for (int i = 0; i < n; ++i) {
    Rational acc;
    for (int j = 0; j < n; ++j) acc += m.at(i, j) * x[j];
    y[i] = std::move(acc);
  }
  return y;
}

inline Operator operator+(const Operator& a, const Operator& b) {
  require_same_space(a, b);
  Operator r = a;
  const int n = r.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) += b.at(i, j);
  return r;
}

inline Operator operator-(const Operator& a, const Operator& b) {
  require_same_space(a, b);
  Operator r = a;
  const int n = r.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) -= b.at(i, j);
  return r;
}

inline Operator operator*(const Rational& c, const Operator& m) {
  Operator r = m;
  const int n = r.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) *= c;
  return r;
}

inline Operator operator*(const Operator& a, const Operator& b) {
  require_same_space(a, b);
  const int n = a.dim();
  Operator r = Operator::zero(a.space());
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Rational& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        const Rational& bkj = b.at(k, j);
        if (!bkj.is_zero()) r.at(i, j) += aik * bkj;
      }
    }
  return r;
}

}  // namespace domcheck
