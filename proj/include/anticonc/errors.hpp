// Copyright 2026 The anticonc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace anticonc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input size exceeds an enumeration cap (naive or meet-in-the-middle).
class TooLarge : public Error {
 public:
  using Error::Error;
};

/// Sum range too wide for the dynamic-programming table.
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

/// Work estimate exceeds the configured enumeration budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Parameters violate an operation's precondition.
class BadParams : public Error {
 public:
  using Error::Error;
};

/// Interval evaluation could not separate the operands before the precision cap.
class Undecidable : public Error {
 public:
  using Error::Error;
};

/// A provable invariant failed; always indicates a bug.
class InvariantViolated : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace anticonc
