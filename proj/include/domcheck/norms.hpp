// Copyright 2026 The domcheck authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "domcheck/operators.hpp"

namespace domcheck {

/// Exact L1->L1 operator norm on the weighted space:
///   ||M|| = max_j (sum_i w_i |M_ij|) / w_j.
/// The unit ball's extreme points are +-e_j/w_j, so the max over weighted
/// column sums is the exact norm, for arbitrary (not only positive) M.
inline Rational operator_norm_1(const Operator& m) {
  const int n = m.dim();
  const Space& sp = *m.space();
  Rational best;  // norms are >= 0 and the max over columns is attained
  for (int j = 0; j < n; ++j) {
    Rational col;
    for (int i = 0; i < n; ++i) col += sp.weight(i) * m.at(i, j).abs();
    col /= sp.weight(j);
    if (j == 0 || col > best) best = std::move(col);
  }
  return best;
}

/// A positive unit vector attaining the norm of a positive operator.
struct NormWitness {
  int column_index;  // maximizing column j, smallest on ties
  Vec1 vector;       // e_j / w_j, positive, norm1 == 1
  Rational value;    // == operator_norm_1(M) == norm1(M * vector)
};

/// Witness for the positive-cone supremum sup{||Mx|| : ||x||=1, x>=0}.
/// Rejects non-positive M: the cone reduction only applies to positive
/// operators.
inline NormWitness positive_norm_witness(const Operator& m) {
  if (!is_positive(m))
    throw positivity_error("positive_norm_witness requires a positive operator");
  const int n = m.dim();
  const Space& sp = *m.space();
  int best_j = 0;
  Rational best;
  for (int j = 0; j < n; ++j) {
    Rational col;
    for (int i = 0; i < n; ++i) col += sp.weight(i) * m.at(i, j);
    col /= sp.weight(j);
    if (j == 0 || col > best) {
      best = std::move(col);
      best_j = j;
    }
  }
  return NormWitness{best_j, Vec1::unit_basis(m.space(), best_j), best};
}

struct NormTriple {
  Rational diff;    // ||Sx - Tx||
  Rational s_part;  // ||Sx||
  Rational t_part;  // ||Tx||
};

/// For positive contractions T <= S and x >= 0, the norm of the difference
/// splits exactly: ||Sx - Tx|| = ||Sx|| - ||Tx||. Preconditions are reported
/// distinctly; the identity itself is re-verified before returning.
inline NormTriple lemma32_identity(const Operator& s, const Operator& t,
                                   const Vec1& x) {
  if (!is_positive(s) || !is_positive(t))
    throw positivity_error("lemma32_identity requires positive operators");
  if (!dominates(s, t))
    throw domination_error("lemma32_identity requires T <= S");
  if (!is_positive(x))
    throw positivity_error("lemma32_identity requires x >= 0");
  const Vec1 sx = apply(s, x);
  const Vec1 tx = apply(t, x);
  NormTriple r{norm1(sx - tx), norm1(sx), norm1(tx)};
  if (!(r.diff == r.s_part - r.t_part))
    throw error("norm additivity violated: ||Sx-Tx|| != ||Sx|| - ||Tx||");
  return r;
}

/// M^n by iterated multiplication; M^0 is the identity.
inline Operator power(const Operator& m, int n) {
  if (n < 0) throw error("negative operator power");
  Operator acc = Operator::identity(m.space());
  for (int k = 0; k < n; ++k) acc = acc * m;
  return acc;
}

/// d(n) = ||S^n - T^n|| for n = 1..horizon, exact.
struct SeparationSequence {
  int horizon = 0;
  std::vector<Rational> values;  // values[k] = d(k+1)

  const Rational& d(int n) const {  // 1-based
    if (n < 1 || n > horizon) throw dimension_error("d(n) index out of range");
    return values[static_cast<size_t>(n - 1)];
  }
};

namespace detail {

// dim x dim integer matrix product, accumulating with mpz_addmul
inline std::vector<mpz_class> int_matmul(const std::vector<mpz_class>& a,
                                         const std::vector<mpz_class>& b, int n) {
  std::vector<mpz_class> r(static_cast<size_t>(n) * static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const mpz_class& aik = a[static_cast<size_t>(i) * n + k];
      if (aik == 0) continue;
      for (int j = 0; j < n; ++j) {
        const mpz_class& bkj = b[static_cast<size_t>(k) * n + j];
        if (bkj != 0)
          mpz_addmul(r[static_cast<size_t>(i) * n + j].get_mpz_t(),
                     aik.get_mpz_t(), bkj.get_mpz_t());
      }
    }
  return r;
}

}  // namespace detail

/// Computes d(1..horizon) incrementally, one multiply per step per operator.
/// Internally the pair is scaled to integer matrices over a common
/// denominator (S = A/m, T = B/m), so the power chain runs on mpz without
/// per-operation reduction; each d(n) is assembled exactly as
/// max_j sum_i u_i |A^n - B^n|_ij / (u_j m^n) with integerized weights u.
/// Values are identical to the mpq route through power() -- tests hold the
/// two routes together.
inline SeparationSequence separation_sequence(const Operator& s,
                                              const Operator& t, int horizon) {
  require_same_space(s, t);
  if (horizon < 1) throw config_error("separation horizon must be >= 1");
  const int n = s.dim();
  const size_t nn = static_cast<size_t>(n) * static_cast<size_t>(n);
  const Space& sp = *s.space();

  mpz_class denom(1);
  for (const Rational& e : s.entries())
    mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), e.denominator().get_mpz_t());
  for (const Rational& e : t.entries())
    mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), e.denominator().get_mpz_t());

  auto scaled = [&](const Operator& m) {
    std::vector<mpz_class> a(nn);
    for (size_t k = 0; k < nn; ++k) {
      const Rational& e = m.entries()[k];
      a[k] = e.numerator() * (denom / e.denominator());
    }
    return a;
  };
  const std::vector<mpz_class> a = scaled(s);
  const std::vector<mpz_class> b = scaled(t);

  mpz_class wden(1);
  for (const Rational& w : sp.weights())
    mpz_lcm(wden.get_mpz_t(), wden.get_mpz_t(), w.denominator().get_mpz_t());
  std::vector<mpz_class> u(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Rational& w = sp.weight(i);
    u[static_cast<size_t>(i)] = w.numerator() * (wden / w.denominator());
  }

  SeparationSequence seq;
  seq.horizon = horizon;
  seq.values.reserve(static_cast<size_t>(horizon));
  std::vector<mpz_class> an = a;
  std::vector<mpz_class> bn = b;
  mpz_class mpow = denom;  // denom^step
  mpz_class diff, col;
  for (int step = 1;; ++step) {
    Rational best;
    for (int j = 0; j < n; ++j) {
      col = 0;
      for (int i = 0; i < n; ++i) {
        diff = an[static_cast<size_t>(i) * n + j] - bn[static_cast<size_t>(i) * n + j];
        mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
        mpz_addmul(col.get_mpz_t(), u[static_cast<size_t>(i)].get_mpz_t(),
                   diff.get_mpz_t());
      }
      Rational d(col, u[static_cast<size_t>(j)] * mpow);
      if (j == 0 || d > best) best = std::move(d);
    }
    seq.values.push_back(std::move(best));
    if (step == horizon) break;
    an = detail::int_matmul(an, a, n);
    bn = detail::int_matmul(bn, b, n);
    mpow *= denom;
  }
  return seq;
}

/// Empirical flag only; the result makes no claim that d(n) must be monotone.
inline bool monotone_nonincreasing(const SeparationSequence& seq) {
  for (size_t k = 1; k < seq.values.size(); ++k)
    if (seq.values[k] > seq.values[k - 1]) return false;
  return true;
}

inline Rational min_value(const SeparationSequence& seq) {
  Rational m = seq.values.front();
  for (const Rational& v : seq.values)
    if (v < m) m = v;
  return m;
}

}  // namespace domcheck
