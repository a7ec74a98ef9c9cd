// Copyright 2026 The domcheck authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "domcheck/example.hpp"
#include "domcheck/verifier.hpp"

using namespace domcheck;

TEST_CASE("instance builds the expected matrices") {
  const auto pair = build_example(ExampleParams::paper_instance());
  const auto sp = make_space(2);
  CHECK(pair.S == Operator::from_rows(sp, {{Rational(1, 2), Rational(1, 3)},
                                           {Rational(1, 2), Rational(1, 3)}}));
  CHECK(pair.T == Operator::from_rows(sp, {{Rational(0), Rational(1, 4)},
                                           {Rational(0), Rational(0)}}));
  CHECK(dominates(pair.S, pair.T));
}

TEST_CASE("degenerate T = 0 is a valid member of the family") {
  const ExampleParams p{Rational(1, 2), Rational(0), Rational(1, 2), Rational(0),
                        Rational(0)};
  const auto pair = build_example(p);
  CHECK(pair.T == Operator::zero(make_space(2)));
  CHECK(pair.valid());
}

TEST_CASE("each violated constraint is reported by name") {
  auto p = ExampleParams::paper_instance();
  p.lambda = Rational(1, 2);  // > B = 1/3
  try {
    build_example(p);
    FAIL("expected constraint_error");
  } catch (const constraint_error& e) {
    CHECK(e.constraint == "dominance");
  }

  p = ExampleParams::paper_instance();
  p.B = Rational(-1, 3);
  try {
    p.validate();
    FAIL("expected constraint_error");
  } catch (const constraint_error& e) {
    CHECK(e.constraint == "positivity");
  }

  p = ExampleParams::paper_instance();
  p.B = Rational(3, 4);  // B + D = 13/12 > 1 = A + C
  try {
    p.validate();
    FAIL("expected constraint_error");
  } catch (const constraint_error& e) {
    CHECK(e.constraint == "AC");
  }

  p = ExampleParams::paper_instance();
  p.A = Rational(2, 3);  // A + C = 7/6 > 1
  p.B = Rational(0);
  p.D = Rational(0);
  p.lambda = Rational(0);
  try {
    p.validate();
    FAIL("expected constraint_error");
  } catch (const constraint_error& e) {
    CHECK(e.constraint == "contraction");
  }
}

TEST_CASE("closed-form norms") {
  SECTION("instance: (1, 1, 5/6)") {
    const auto f = closed_form_norms(ExampleParams::paper_instance());
    CHECK(f.norm_s == Rational(1));
    CHECK(f.norm_s_minus_t == Rational(1));
    CHECK(f.norm_s2_minus_t2 == Rational(5, 6));
  }
  SECTION("B = D = lambda = 0: (1, 1, 1/2)") {
    const ExampleParams p{Rational(1, 2), Rational(0), Rational(1, 2), Rational(0),
                          Rational(0)};
    const auto f = closed_form_norms(p);
    CHECK(f.norm_s == Rational(1));
    CHECK(f.norm_s_minus_t == Rational(1));
    CHECK(f.norm_s2_minus_t2 == Rational(1, 2));
  }
  SECTION("all-zero parameters: (0, 0, 0)") {
    const ExampleParams p{Rational(0), Rational(0), Rational(0), Rational(0),
                          Rational(0)};
    const auto f = closed_form_norms(p);
    CHECK(f.norm_s == Rational(0));
    CHECK(f.norm_s_minus_t == Rational(0));
    CHECK(f.norm_s2_minus_t2 == Rational(0));
  }
}

TEST_CASE("cross-validation: formulas equal the engine exactly") {
  CHECK(cross_validate(ExampleParams::paper_instance()).ok);

  SplitMix64 rng(555);
  for (int k = 0; k < 400; ++k) {
    const auto p = sample_valid_params(rng);
    const auto cv = cross_validate(p);
    INFO("A=" << p.A << " B=" << p.B << " C=" << p.C << " D=" << p.D
              << " lambda=" << p.lambda);
    CHECK(cv.ok);
    CHECK(!cv.mismatch_s);
    CHECK(!cv.mismatch_s_minus_t);
    CHECK(!cv.mismatch_s2_minus_t2);
  }
}

TEST_CASE("the instance separates at 2 but not at 1") {
  // the corollary's hypothesis fails (d(1) = 1) yet the theorem applies with
  // n0 = 2: the strengthening over the d(1) < 1 statement is visible here
  const auto pair = build_example(ExampleParams::paper_instance());
  const auto v = verify_theorem(pair, 64);
  CHECK(v.d_sequence.d(1) == Rational(1));
  CHECK(v.d_sequence.d(2) < Rational(1));
  CHECK(!v.corollary_applicable);
  REQUIRE(v.n0.has_value());
  CHECK(*v.n0 == 2);
  CHECK(v.violations.empty());

  const auto diag = separation_diagnostic(ExampleParams::paper_instance());
  CHECK(diag.c_positive);
  CHECK(diag.b_plus_d_below_one);
}

TEST_CASE("T squared vanishes across the family") {
  SplitMix64 rng(556);
  for (int k = 0; k < 100; ++k) {
    const auto pair = build_example(sample_valid_params(rng));
    CHECK(power(pair.T, 2) == Operator::zero(make_space(2)));
  }
}

TEST_CASE("sampled parameters are always valid") {
  SplitMix64 rng(557);
  for (int k = 0; k < 1000; ++k) {
    const auto p = sample_valid_params(rng);
    CHECK_NOTHROW(p.validate());
    CHECK(p.lambda <= p.B);
    CHECK(p.B + p.D <= p.A + p.C);
    CHECK(p.A + p.C <= Rational(1));
  }
}
