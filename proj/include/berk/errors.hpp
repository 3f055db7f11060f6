#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace berk {

/// Classification used by the CLI to pick exit codes.
enum class ErrorKind {
  kParse,               // exit 2
  kFactorBoundExceeded, // exit 3
  kPrecisionCapExceeded,// exit 4
  kDomain,              // exit 5
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A precondition of a mathematical operation was violated. The tag names
/// the condition (e.g. "NegativeValuation", "NotHomogeneous").
class DomainError : public Error {
 public:
  DomainError(std::string tag, const std::string& detail)
      : Error(ErrorKind::kDomain, tag + ": " + detail), tag_(std::move(tag)) {}
  const std::string& tag() const noexcept { return tag_; }

 private:
  std::string tag_;
};

class FactorBoundExceeded : public Error {
 public:
  explicit FactorBoundExceeded(const std::string& what)
      : Error(ErrorKind::kFactorBoundExceeded, "FactorBoundExceeded: " + what) {}
};

class PrecisionCapExceeded : public Error {
 public:
  explicit PrecisionCapExceeded(const std::string& what)
      : Error(ErrorKind::kPrecisionCapExceeded, "PrecisionCapExceeded: " + what) {}
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, std::vector<std::string> expected,
             const std::string& detail);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

}  // namespace berk
