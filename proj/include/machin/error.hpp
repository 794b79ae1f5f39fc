#pragma once

#include <stdexcept>
#include <string>

namespace machin {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain an operation supports
/// (negative square root, |x| >= 1 for the arctangent series, k < 2, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

}  // namespace machin
