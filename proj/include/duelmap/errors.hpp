#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace duelmap {

/// Base for every error raised by the library. `exit_code()` follows the CLI
/// contract: 1 usage/IO, 2 scenario parse, 3 numerical/internal.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 3; }
};

class ValidationError : public Error {
 public:
  ValidationError(std::string msg, std::vector<std::string> fields)
      : Error(std::move(msg)), fields_(std::move(fields)) {}
  const std::vector<std::string>& fields() const noexcept { return fields_; }
  int exit_code() const noexcept override { return 2; }

 private:
  std::vector<std::string> fields_;
};

class UsageError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 1; }
};

class ParseError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

/// Orbit left the overflow guard. `last_valid_index` is the last step whose
/// state was still finite and bounded.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& msg, std::size_t last_valid_index)
      : Error(msg), last_valid_index_(last_valid_index) {}
  std::size_t last_valid_index() const noexcept { return last_valid_index_; }

 private:
  std::size_t last_valid_index_;
};

/// Two independent solver routes disagreed. Signals a bug, not bad input.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Wraps an error from one component of a composite command, keeping the
/// original exit code.
class TaggedError : public Error {
 public:
  TaggedError(const std::string& component, const Error& inner)
      : Error(component + ": " + inner.what()), code_(inner.exit_code()) {}
  int exit_code() const noexcept override { return code_; }

 private:
  int code_;
};

}  // namespace duelmap
