// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#pragma once

#include <stdexcept>
#include <string>

namespace dkb {

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file (bad line, bad number, wrong column count).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Invalid or inconsistent configuration (unknown strategy name, missing weight).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A structural precondition was violated (unknown term id, malformed label,
/// feature not present in a perspective, overlapping rule sides).
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A value is mathematically undefined for the given input (zero-norm vector,
/// zero marginal in PMI, degenerate matrix norm, support-zero confidence).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Raised when rule mining has no feature space to work with
/// (fewer than two feature rows). Callers usually translate this
/// into an empty result plus a diagnostic.
class NothingToMine : public Error {
public:
    using Error::Error;
};

} // namespace dkb
