// Copyright 2026 The domcheck authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace domcheck {

/// Base class for every error this library throws on purpose.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (rational literals, matrix/vector files, JSON).
struct parse_error : error {
  using error::error;
};

/// Shapes disagree: vector/operator lengths, mismatched spaces.
struct dimension_error : error {
  using error::error;
};

/// A positivity precondition failed (negative vector, non-positive operator,
/// non-positive weight).
struct positivity_error : error {
  using error::error;
};

/// A dominance precondition (T <= S) failed.
struct domination_error : error {
  using error::error;
};

/// Invalid campaign/search/CLI configuration.
struct config_error : error {
  using error::error;
};

/// A named constraint of the parametric 2x2 example failed.
/// `constraint` is one of "positivity", "dominance", "AC", "contraction".
struct constraint_error : error {
  constraint_error(std::string name, const std::string& what)
      : error(what), constraint(std::move(name)) {}
  std::string constraint;
};

}  // namespace domcheck
