#pragma once

#include <stdexcept>
#include <string>

namespace bpp {

// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument to a pure operation (dimension mismatch, empty set, t <= 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An instance or configuration failed validation. `field` names the offending
// entry using a JSON-pointer-like path such as "F[2][0]".
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace bpp
