// Copyright 2026 The domcheck authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "domcheck/errors.hpp"
#include "domcheck/example.hpp"
#include "domcheck/json_io.hpp"
#include "domcheck/norms.hpp"
#include "domcheck/operators.hpp"
#include "domcheck/pnorm.hpp"
#include "domcheck/rational.hpp"
#include "domcheck/rng.hpp"
#include "domcheck/sampler.hpp"
#include "domcheck/space.hpp"
#include "domcheck/verifier.hpp"
#include "domcheck/version.hpp"
