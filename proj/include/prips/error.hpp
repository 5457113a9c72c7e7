// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace prips {

/// Malformed input document (bad JSON, missing fields, wrong types).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a domain invariant or precondition.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Feature-schema or weight-format version disagreement.
class VersionMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace prips
