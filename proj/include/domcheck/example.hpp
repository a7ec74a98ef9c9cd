// Copyright 2026 The domcheck authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>

#include "domcheck/norms.hpp"
#include "domcheck/rng.hpp"
#include "domcheck/sampler.hpp"

namespace domcheck {

/// Parameters of the 2x2 family
///   S = [[A, B], [C, D]],  T = [[0, lambda], [0, 0]]
/// on the unweighted 2-dimensional space. Validity:
///   positivity:  A, B, C, D, lambda >= 0
///   dominance:   lambda <= B            (T <= S)
///   AC:          B + D <= A + C         (makes column 1 the maximizing one)
///   contraction: A + C <= 1             (with AC this bounds both columns)
struct ExampleParams {
  Rational A, B, C, D, lambda;

  static ExampleParams paper_instance() {
    return ExampleParams{Rational(1, 2), Rational(1, 3), Rational(1, 2),
                         Rational(1, 3), Rational(1, 4)};
  }

  void validate() const {
    if (A.sign() < 0 || B.sign() < 0 || C.sign() < 0 || D.sign() < 0 ||
        lambda.sign() < 0)
      throw constraint_error("positivity", "A, B, C, D, lambda must be >= 0");
    if (lambda > B)
      throw constraint_error("dominance", "need lambda <= B for T <= S");
    if (B + D > A + C)
      throw constraint_error("AC", "need B + D <= A + C");
    if (A + C > Rational(1))
      throw constraint_error("contraction", "need A + C <= 1");
  }
};

inline DominatedPair build_example(const ExampleParams& p) {
  p.validate();
  SpacePtr space = make_space(2);
  Operator s = Operator::from_rows(space, {{p.A, p.B}, {p.C, p.D}});
  Operator t = Operator::from_rows(space, {{Rational(0), p.lambda},
                                           {Rational(0), Rational(0)}});
  return DominatedPair{std::move(s), std::move(t)};
}

struct ClosedFormNorms {
  Rational norm_s;          // ||S||        = A + C
  Rational norm_s_minus_t;  // ||S - T||    = A + C
  Rational norm_s2_minus_t2;  // ||S^2-T^2|| = A^2 + AC + BC + DC
};

/// The family's norms in closed form, valid on the constrained region.
inline ClosedFormNorms closed_form_norms(const ExampleParams& p) {
  p.validate();
  ClosedFormNorms f;
  f.norm_s = p.A + p.C;
  f.norm_s_minus_t = p.A + p.C;
  f.norm_s2_minus_t2 = p.A * p.A + p.A * p.C + p.B * p.C + p.D * p.C;
  return f;
}

/// When n0 = 2 for the family: the closed forms give ||S^2 - T^2|| < 1
/// exactly when C > 0 and B + D < 1 (at A + C = 1). Diagnostic only, not a
/// validity constraint.
struct SeparationDiagnostic {
  bool c_positive = false;
  bool b_plus_d_below_one = false;
};

inline SeparationDiagnostic separation_diagnostic(const ExampleParams& p) {
  return SeparationDiagnostic{p.C.sign() > 0, p.B + p.D < Rational(1)};
}

/// Closed forms vs the norm engine, exact. `ok` iff all three agree;
/// the mismatch flags say which norm differed.
struct CrossValidation {
  bool ok = false;
  ClosedFormNorms formula;
  ClosedFormNorms engine;
  bool mismatch_s = false;
  bool mismatch_s_minus_t = false;
  bool mismatch_s2_minus_t2 = false;

  explicit operator bool() const { return ok; }
};

inline CrossValidation cross_validate(const ExampleParams& p) {
  CrossValidation r;
  r.formula = closed_form_norms(p);
  const DominatedPair pair = build_example(p);
  r.engine.norm_s = operator_norm_1(pair.S);
  r.engine.norm_s_minus_t = operator_norm_1(pair.S - pair.T);
  r.engine.norm_s2_minus_t2 =
      operator_norm_1(power(pair.S, 2) - power(pair.T, 2));
  r.mismatch_s = !(r.formula.norm_s == r.engine.norm_s);
  r.mismatch_s_minus_t = !(r.formula.norm_s_minus_t == r.engine.norm_s_minus_t);
  r.mismatch_s2_minus_t2 =
      !(r.formula.norm_s2_minus_t2 == r.engine.norm_s2_minus_t2);
  r.ok = !r.mismatch_s && !r.mismatch_s_minus_t && !r.mismatch_s2_minus_t2;
  return r;
}

/// Uniform draw of valid parameters on the 1/grid grid, built constructively
/// so no rejection loop is needed:
///   A <= 1, C <= 1 - A, B <= A + C, D <= A + C - B, lambda <= B.
inline ExampleParams sample_valid_params(SplitMix64& rng, int grid = 12) {
  auto draw_up_to = [&](const Rational& bound) {
    // bound is a multiple of 1/grid in [0, 1]
    const long max_k = mpz_class(bound.numerator() * grid / bound.denominator())
                           .get_si();
    return Rational(static_cast<long>(rng.bounded(static_cast<std::uint64_t>(max_k) + 1)),
                    grid);
  };
  ExampleParams p;
  p.A = draw_up_to(Rational(1));
  p.C = draw_up_to(Rational(1) - p.A);
  p.B = draw_up_to(p.A + p.C);
  p.D = draw_up_to(p.A + p.C - p.B);
  p.lambda = draw_up_to(p.B);
  p.validate();
  return p;
}

}  // namespace domcheck
