// Copyright 2026 The anticonc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "anticonc/bound_expr.hpp"
#include "anticonc/cube_set.hpp"
#include "anticonc/errors.hpp"
#include "anticonc/frontier.hpp"
#include "anticonc/lemmas.hpp"
#include "anticonc/numerics.hpp"
#include "anticonc/random.hpp"
#include "anticonc/subsetsum.hpp"
#include "anticonc/sumsets.hpp"

namespace anticonc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace anticonc
