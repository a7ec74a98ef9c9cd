// Copyright 2026 The domcheck authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

namespace domcheck {

inline constexpr std::string_view kToolName = "domcheck";
inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace domcheck
