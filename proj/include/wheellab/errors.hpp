#pragma once

#include <stdexcept>
#include <string>

namespace wheellab {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation would exceed the 64-bit unsigned integer width.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Materializing a structure would exceed the configured memory budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// An argument is outside the operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Storage-layer errors. Each failure mode is a distinct type so callers
// (and tests) can tell them apart.
class StorageError : public Error {
 public:
  using Error::Error;
};

class IoError : public StorageError {
 public:
  using StorageError::StorageError;
};

class BadMagicError : public StorageError {
 public:
  using StorageError::StorageError;
};

class TruncatedError : public StorageError {
 public:
  using StorageError::StorageError;
};

class ChecksumError : public StorageError {
 public:
  using StorageError::StorageError;
};

// A deserialized structure violates its type invariants.
class InvariantError : public StorageError {
 public:
  using StorageError::StorageError;
};

}  // namespace wheellab
