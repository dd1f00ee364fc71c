#pragma once

#include <stdexcept>
#include <string>

namespace paramod {

// Base for every failure that is the caller's fault (bad input, missing data).
// The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public DomainError {
 public:
  using DomainError::DomainError;
};

class MissingData : public DomainError {
 public:
  explicit MissingData(std::string key)
      : DomainError("missing data: " + key), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class ParseError : public DomainError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DomainError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace paramod
