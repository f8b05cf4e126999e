// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace portsim {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Unknown label, duplicate label, or layout mismatch between operands.
class LayoutError : public Error {
public:
  using Error::Error;
};

/// Subsystem dimensions incompatible with the requested operation.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Operator expected to be positive semidefinite has an eigenvalue below the floor.
class NotPsdError : public Error {
public:
  using Error::Error;
};

/// Requested problem size exceeds the configured dense cap.
class ResourceLimitError : public Error {
public:
  using Error::Error;
};

/// Invalid argument value (index out of range, bad mode, ...).
class ArgumentError : public Error {
public:
  using Error::Error;
};

/// A cross-checked numerical invariant failed (e.g. analytic vs dense mismatch).
class InvariantError : public Error {
public:
  using Error::Error;
};

/// Filesystem read/write failure.
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace portsim
