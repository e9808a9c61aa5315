#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vsplit {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed dg document or map file.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DuplicateVertex : public Error {
 public:
  using Error::Error;
};

class DuplicateArrow : public Error {
 public:
  using Error::Error;
};

class UnknownVertex : public Error {
 public:
  using Error::Error;
};

class InvalidLabel : public Error {
 public:
  using Error::Error;
};

// A precondition of an operation does not hold for the given input.
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class NotReflexive : public PreconditionViolated {
 public:
  using PreconditionViolated::PreconditionViolated;
};

class NotStable : public PreconditionViolated {
 public:
  using PreconditionViolated::PreconditionViolated;
};

class NotAClasp : public PreconditionViolated {
 public:
  using PreconditionViolated::PreconditionViolated;
};

class LockedClasp : public PreconditionViolated {
 public:
  LockedClasp(std::string vertex)
      : PreconditionViolated("locked clasp " + vertex), vertex_(std::move(vertex)) {}
  const std::string& vertex() const { return vertex_; }

 private:
  std::string vertex_;
};

// Assignment of a compression map is not total on the source vertices.
class DomainMismatch : public PreconditionViolated {
 public:
  using PreconditionViolated::PreconditionViolated;
};

// compose() called on maps whose graphs do not chain.
class ChainMismatch : public PreconditionViolated {
 public:
  using PreconditionViolated::PreconditionViolated;
};

class BoundExceeded : public PreconditionViolated {
 public:
  using PreconditionViolated::PreconditionViolated;
};

// Raised when a guaranteed property fails at runtime; indicates a bug.
class InternalInvariantBreached : public Error {
 public:
  using Error::Error;
};

}  // namespace vsplit
