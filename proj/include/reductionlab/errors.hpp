#pragma once

#include <stdexcept>
#include <string>

namespace reductionlab {

// Base of every error thrown by the library. The C API maps each subclass
// onto a stable status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input outside an operation's mathematical domain (non-Hermitian generator,
// unknown outcome value, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A value failed its type invariant. `field` names the offending member so
// file loaders can anchor the message to a source line.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what, std::string field = {})
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class ZeroProbabilityError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class FileNotFoundError : public Error {
 public:
  using Error::Error;
};

}  // namespace reductionlab
