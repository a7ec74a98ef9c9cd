// Copyright 2026 The domcheck authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "domcheck/errors.hpp"

namespace domcheck {

/// Arbitrary-precision rational, always held in canonical reduced form with a
/// positive denominator. Thin wrapper over GMP's mpq_class; the wrapper exists
/// to guarantee the canonical-form invariant at every construction site and to
/// pin down the "p/q" text format used by all file formats.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(int n) : q_(n) {}              // NOLINT(google-explicit-constructor)
  Rational(long n) : q_(n) {}             // NOLINT(google-explicit-constructor)
  Rational(long long n) : q_(static_cast<long>(n)) {}  // NOLINT

  Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw parse_error("rational with zero denominator");
    q_.canonicalize();
  }

  explicit Rational(mpq_class q) : q_(std::move(q)) {
    if (q_.get_den() == 0) throw parse_error("rational with zero denominator");
    q_.canonicalize();
  }

  Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
    if (den == 0) throw parse_error("rational with zero denominator");
    q_.canonicalize();
  }

  /// Parses "p", "-p" or "p/q" (decimal digits, optional leading sign on the
  /// numerator only). Throws parse_error on anything else, including q = 0.
  static Rational parse(std::string_view text) {
    if (text.empty()) throw parse_error("empty rational literal");
    const auto slash = text.find('/');
    std::string num_part(text.substr(0, slash));
    if (!is_integer_literal(num_part))
      throw parse_error("bad rational literal: '" + std::string(text) + "'");
    if (num_part[0] == '+') num_part.erase(0, 1);  // mpz rejects a leading '+'
    mpq_class q;
    if (slash == std::string_view::npos) {
      q = mpq_class(mpz_class(num_part));
    } else {
      const std::string den_part(text.substr(slash + 1));
      if (den_part.empty() || den_part[0] == '-' || den_part[0] == '+' ||
          !is_integer_literal(den_part))
        throw parse_error("bad rational literal: '" + std::string(text) + "'");
      mpz_class den(den_part);
      if (den == 0)
        throw parse_error("zero denominator in '" + std::string(text) + "'");
      q = mpq_class(mpz_class(num_part), den);
      q.canonicalize();
    }
    Rational r;
    r.q_ = std::move(q);
    return r;
  }

  /// Canonical text form: "p" when the denominator is 1, else "p/q".
  std::string str() const { return q_.get_str(); }

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return mpq_sgn(q_.get_mpq_t()) == 0; }
  int sign() const { return mpq_sgn(q_.get_mpq_t()); }
  bool is_integer() const { return q_.get_den() == 1; }

  double to_double() const { return q_.get_d(); }

  Rational abs() const {
    Rational r(*this);
    mpq_abs(r.q_.get_mpq_t(), q_.get_mpq_t());
    return r;
  }

  Rational reciprocal() const {
    if (is_zero()) throw error("reciprocal of zero");
    Rational r;
    mpq_inv(r.q_.get_mpq_t(), q_.get_mpq_t());
    return r;
  }

  Rational operator-() const {
    Rational r;
    mpq_neg(r.q_.get_mpq_t(), q_.get_mpq_t());
    return r;
  }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw error("division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t());
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  static bool is_integer_literal(const std::string& s) {
    std::size_t i = (s.size() > 0 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  }

  mpq_class q_;  // invariant: canonical, denominator > 0
};

inline Rational abs(const Rational& r) { return r.abs(); }

}  // namespace domcheck
