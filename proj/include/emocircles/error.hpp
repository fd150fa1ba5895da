#pragma once

#include <stdexcept>
#include <string>

namespace emoc {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

// Three points that do not define a circle (collinear or coincident).
class DegenerateGeometryError : public Error {
 public:
  using Error::Error;
};

class InsufficientEdgesError : public Error {
 public:
  using Error::Error;
};

class NoCircleFoundError : public Error {
 public:
  using Error::Error;
};

// The objective returned NaN or infinity.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// File could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

// File opened but its header or payload is malformed.
class MalformedFileError : public Error {
 public:
  using Error::Error;
};

class UnsupportedFormatError : public Error {
 public:
  using Error::Error;
};

// Scene or run configuration that fails validation; carries the offending field.
class SpecError : public Error {
 public:
  SpecError(std::string field, std::string message)
      : Error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)),
        message_(std::move(message)) {}

  const std::string& field() const noexcept { return field_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string field_;
  std::string message_;
};

}  // namespace emoc
