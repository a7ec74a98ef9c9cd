// Copyright 2026 The domcheck authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "domcheck/operators.hpp"
#include "domcheck/rng.hpp"
#include "domcheck/sampler.hpp"
#include "domcheck/space.hpp"

using namespace domcheck;

namespace {

Vec1 vec(const SpacePtr& s, std::vector<Rational> c) { return Vec1(s, std::move(c)); }

Operator mat2(const SpacePtr& s, Rational a, Rational b, Rational c, Rational d) {
  return Operator::from_rows(s, {{a, b}, {c, d}});
}

}  // namespace

TEST_CASE("space invariants") {
  CHECK_THROWS_AS(Space(0), dimension_error);
  CHECK_THROWS_AS(Space(-1), dimension_error);
  CHECK_THROWS_AS(Space(2, {Rational(1)}), dimension_error);
  CHECK_THROWS_AS(Space(2, {Rational(1), Rational(0)}), positivity_error);
  CHECK_THROWS_AS(Space(1, {Rational(-1)}), positivity_error);
  CHECK(make_space(3)->unit_weights());  // weights default to the counting trace
  CHECK(!make_space(2, {Rational(2), Rational(3)})->unit_weights());
}

TEST_CASE("trace examples") {
  CHECK(trace(vec(make_space(2), {Rational(1), Rational(2)})) == Rational(3));
  CHECK(trace(vec(make_space(2), {Rational(0), Rational(0)})) == Rational(0));
  const auto w23 = make_space(2, {Rational(2), Rational(3)});
  CHECK(trace(vec(w23, {Rational(1), Rational(-1)})) == Rational(-1));
}

TEST_CASE("norm1 examples") {
  CHECK(norm1(vec(make_space(2), {Rational(1), Rational(-2)})) == Rational(3));
  CHECK(norm1(vec(make_space(2), {Rational(1, 2), Rational(1, 3)})) ==
        Rational(5, 6));
  const auto w23 = make_space(2, {Rational(2), Rational(3)});
  CHECK(norm1(vec(w23, {Rational(1), Rational(-1)})) == Rational(5));
}

TEST_CASE("jordan decomposition examples") {
  const auto s = make_space(2);
  auto [p1, n1] = jordan_decompose(vec(s, {Rational(2), Rational(-3)}));
  CHECK(p1 == vec(s, {Rational(2), Rational(0)}));
  CHECK(n1 == vec(s, {Rational(0), Rational(3)}));

  auto [p2, n2] = jordan_decompose(Vec1::zero(s));
  CHECK(p2 == Vec1::zero(s));
  CHECK(n2 == Vec1::zero(s));

  auto [p3, n3] = jordan_decompose(vec(s, {Rational(-1), Rational(5)}));
  CHECK(p3 == vec(s, {Rational(0), Rational(5)}));
  CHECK(n3 == vec(s, {Rational(1), Rational(0)}));
}

TEST_CASE("positivity checks") {
  const auto s = make_space(2);
  CHECK(is_positive(Operator::identity(s)));
  CHECK(is_positive(mat2(s, Rational(0), Rational(1, 4), Rational(0), Rational(0))));
  CHECK(!is_positive(mat2(s, Rational(1), Rational(-1), Rational(0), Rational(1))));
  CHECK(is_positive(vec(s, {Rational(0), Rational(2)})));
  CHECK(!is_positive(vec(s, {Rational(0), Rational(-1, 7)})));
}

TEST_CASE("dominates examples") {
  const auto sp = make_space(2);
  const auto S = mat2(sp, Rational(1, 2), Rational(1, 3), Rational(1, 2), Rational(1, 3));
  const auto T = mat2(sp, Rational(0), Rational(1, 4), Rational(0), Rational(0));
  CHECK(dominates(S, T));
  CHECK(dominates(S, S));
  const auto S_bad =
      mat2(sp, Rational(1, 2), Rational(1, 5), Rational(1, 2), Rational(1, 3));
  CHECK(!dominates(S_bad, T));  // entry (0,1): 1/5 < 1/4
  CHECK_THROWS_AS(dominates(S, Operator::identity(make_space(3))), dimension_error);
}

TEST_CASE("vector space mismatch is rejected") {
  const auto a = vec(make_space(2), {Rational(1), Rational(0)});
  const auto b = vec(make_space(2, {Rational(2), Rational(1)}), {Rational(1), Rational(0)});
  CHECK_THROWS_AS(a + b, dimension_error);
  CHECK_THROWS_AS(Vec1(make_space(3), {Rational(1)}), dimension_error);
}

TEST_CASE("lattice invariants on random vectors") {
  SplitMix64 rng(2026);
  for (int k = 0; k < 300; ++k) {
    const int dim = 1 + rng.bounded_int(8);
    const auto space = rng.bounded(2) == 0
                           ? make_space(dim)
                           : make_space(dim, sample_weights(dim, rng));
    const Vec1 x = sample_unit_vector(space, rng);
    const auto [pos, neg] = jordan_decompose(x);

    CHECK(is_positive(pos));
    CHECK(is_positive(neg));
    CHECK(pos - neg == x);
    for (int i = 0; i < dim; ++i)  // disjoint supports
      CHECK((pos[i].is_zero() || neg[i].is_zero()));
    CHECK(norm1(x) == norm1(pos) + norm1(neg));
    CHECK(norm1(x) == trace(pos) + trace(neg));

    // cone additivity: the structural property the whole theorem rests on
    const Vec1 y = sample_positive_vector(space, rng);
    CHECK(norm1(pos + y) == norm1(pos) + norm1(y));
    CHECK(norm1(y) == trace(y));  // on the cone, norm and trace coincide
  }
}

TEST_CASE("dominance is a partial order") {
  SplitMix64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const int dim = 1 + rng.bounded_int(6);
    const auto space = make_space(dim);
    const Operator a = sample_positive_operator(space, rng);
    const Operator d1 = sample_positive_operator(space, rng);
    const Operator d2 = sample_positive_operator(space, rng);
    const Operator b = a + d1;
    const Operator c = b + d2;

    CHECK(dominates(a, a));              // reflexive
    CHECK(dominates(b, a));
    CHECK(dominates(c, b));
    CHECK(dominates(c, a));              // transitive along the chain
    if (dominates(a, b)) CHECK(a == b);  // antisymmetric
  }
}
