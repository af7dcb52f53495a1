#include "dexr/error.hpp"

namespace dexr {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSchema: return "InvalidSchema";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidRule: return "InvalidRule";
    case ErrorKind::DomainNotSubset: return "DomainNotSubset";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::NotAProduct: return "NotAProduct";
    case ErrorKind::InputNotModel: return "InputNotModel";
    case ErrorKind::Exhausted: return "Exhausted";
    case ErrorKind::NotATrigger: return "NotATrigger";
    case ErrorKind::NotSubset: return "NotSubset";
    case ErrorKind::GNotNegative: return "GNotNegative";
    case ErrorKind::InvalidProfile: return "InvalidProfile";
    case ErrorKind::NotGuarded: return "NotGuarded";
    case ErrorKind::LimitExceeded: return "LimitExceeded";
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::Arity: return "ArityError";
    case ErrorKind::UnknownRelation: return "UnknownRelation";
    case ErrorKind::ConstantInRule: return "ConstantInRule";
  }
  return "Error";
}

namespace {

std::string format_parse_message(int line, int column, const std::string& message,
                                 const std::vector<std::string>& expected) {
  std::string out = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
      out += expected[i];
    }
    out += ")";
  }
  return out;
}

}  // namespace

ParseError::ParseError(ErrorKind kind, int line, int column, const std::string& message,
                       std::vector<std::string> expected)
    : Error(kind, format_parse_message(line, column, message, expected)),
      line_(line),
      column_(column),
      detail_(message),
      expected_(std::move(expected)) {}

}  // namespace dexr
