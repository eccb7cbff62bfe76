#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace symmin {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IndexError : public Error {
public:
  using Error::Error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

class NonFiniteError : public Error {
public:
  using Error::Error;
};

// Raised when an operation's documented precondition does not hold
// (point off the group, unconverged fibre point, non-quotient family, ...).
class PreconditionError : public Error {
public:
  using Error::Error;
};

class UnknownCaseError : public Error {
public:
  using Error::Error;
};

class ConstraintError : public Error {
public:
  ConstraintError(const std::string& what, std::vector<std::string> violated)
      : Error(what), violated_(std::move(violated)) {}
  const std::vector<std::string>& violated() const { return violated_; }

private:
  std::vector<std::string> violated_;
};

}  // namespace symmin
