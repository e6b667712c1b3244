#pragma once

#include <stdexcept>
#include <string>

namespace skl {

// Base class for all library errors.  Every failure mode that is part of an
// operation's contract raises a subclass of Error with a message naming the
// violated precondition or the internal inconsistency.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input outside the mathematical domain (degenerate parameter triple,
// point not on the curve, malformed scalar, bad conductor, ...).
class DomainError : public Error {
public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A computation needed degrees beyond the configured degree/order cap.
class CapExceededError : public Error {
public:
  explicit CapExceededError(const std::string& msg) : Error(msg) {}
};

// A structural expectation failed (kernel dimension wrong, presentation
// shape mismatch, no good basis found, ...).  These indicate either invalid
// input or a falsified structural claim, and always carry a witness.
class StructureError : public Error {
public:
  explicit StructureError(const std::string& msg) : Error(msg) {}
};

// Two independent methods disagreed, or an internal invariant failed.
class InternalError : public Error {
public:
  explicit InternalError(const std::string& msg) : Error(msg) {}
};

// Parse failures for scalar/point/polynomial/JSON input.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace skl
