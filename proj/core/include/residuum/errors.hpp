#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace residuum {

enum class ErrorKind {
  IndexOutOfRange,
  DimensionMismatch,
  NotAlignable,
  MeetsRealLocus,
  InsolubleFlag,
  IdenticallyZeroDenominator,
  PoleHit,
  BruhatViolation,
  EmptyStableSet,
  BudgetExceeded,
  NonDecaying,
  PoleOnArc,
  ForeignPoleInsideTorus,
  SingularSystem,
  Syntax,
  UnboundParameter,
  NonAffineDenominator,
  InvalidProblem,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Problem-file error with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, const std::string& message, std::size_t line,
             std::size_t column, std::vector<std::string> expected = {});
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

}  // namespace residuum
