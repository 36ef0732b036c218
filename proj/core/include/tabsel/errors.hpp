#pragma once

#include <stdexcept>
#include <string>

namespace tabsel {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A selection references a coordinate that does not exist, or has no columns.
class InvalidSelection : public Error {
 public:
  using Error::Error;
};

// An operation that needs at least one row and one column got an empty table.
class EmptyInput : public Error {
 public:
  using Error::Error;
};

// Malformed table, condition, annotation or configuration value.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The remote selector could not produce a response after all retries.
class SelectorUnavailable : public Error {
 public:
  using Error::Error;
};

// A corpus line failed validation. `line()` is 1-based; 0 means "whole file".
class CorpusError : public Error {
 public:
  CorpusError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace tabsel
