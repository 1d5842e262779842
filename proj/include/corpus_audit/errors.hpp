#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace corpus_audit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input does not match the expected layout (missing column, bad key).
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A single record failed validation. line is 1-based in the source file.
class RecordError : public SchemaError {
 public:
  RecordError(std::size_t line, const std::string& what)
      : SchemaError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A metric has no defined value for this input (e.g. zero n-grams).
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

class DegenerateVectorError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

// External backend (model adapter, completion endpoint) failed or is unreachable.
class BackendError : public Error {
 public:
  using Error::Error;
};

}  // namespace corpus_audit
