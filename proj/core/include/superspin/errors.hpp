#pragma once
#include <stdexcept>
#include <string>

namespace superspin {

// Input violates a mathematical precondition (exit status 1 at the CLI).
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotInvertibleError : public DomainError {
public:
  using DomainError::DomainError;
};

class OutOfDomainError : public DomainError {
public:
  using DomainError::DomainError;
};

class CapExceededError : public DomainError {
public:
  using DomainError::DomainError;
};

class NotInKernelError : public DomainError {
public:
  using DomainError::DomainError;
};

// Structurally malformed input: bad shapes, parity, JSON (exit status 2).
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace superspin
