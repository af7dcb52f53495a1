#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dexr {

enum class ErrorKind {
  InvalidSchema,
  InvalidArgument,
  InvalidRule,
  DomainNotSubset,
  SchemaMismatch,
  NotAProduct,
  InputNotModel,
  Exhausted,
  NotATrigger,
  NotSubset,
  GNotNegative,
  InvalidProfile,
  NotGuarded,
  LimitExceeded,
  Syntax,
  Arity,
  UnknownRelation,
  ConstantInRule,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Diagnostic raised by the parser; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, int line, int column, const std::string& message,
             std::vector<std::string> expected = {});

  int line() const { return line_; }
  int column() const { return column_; }
  /// The message without the position prefix.
  const std::string& detail() const { return detail_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::string detail_;
  std::vector<std::string> expected_;
};

}  // namespace dexr
