#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dexr/rule.hpp"
#include "dexr/structure.hpp"

namespace dexr {

struct SourcePosition {
  int line = 1;
  int column = 1;
};

struct SourceRule {
  DisjunctiveDependency rule;
  SourcePosition position;
};

/// A parsed input file: an optional schema declaration, facts and domain
/// blocks (collected into one structure), and rules in source order.
struct SourceDocument {
  SchemaPtr schema;
  bool schema_declared = false;
  Structure structure;
  /// True when the text contained at least one fact or domain block.
  bool has_structure = false;
  std::vector<SourceRule> rules;

  /// Rules as dexrs. Throws Error(InvalidRule) naming the first rule that has
  /// an equality disjunct or an empty head.
  std::vector<Dexr> dexrs() const;
  std::vector<DisjunctiveDependency> dependencies() const;
};

struct ParseOptions {
  /// Schema to type against. A declaration in the text must then agree with
  /// it. Without either, relations are inferred from their first use.
  SchemaPtr schema;
};

/// Throws ParseError carrying ErrorKind::Syntax, Arity, UnknownRelation,
/// ConstantInRule, InvalidRule or InvalidSchema.
SourceDocument parse(std::string_view text, const ParseOptions& options = {});

/// Parses a single rule, e.g. "R(X) -> S(X).". The trailing period is optional.
DisjunctiveDependency parse_rule(std::string_view text, const SchemaPtr& schema);
Dexr parse_dexr(std::string_view text, const SchemaPtr& schema);
Structure parse_structure(std::string_view text, const SchemaPtr& schema);
/// Parses a single constant term such as `a`, `"x y"` or `a*b`.
Constant parse_constant(std::string_view text);

/// Pair constants used by direct products.
Constant make_pair_constant(Constant left, Constant right);
bool is_pair_constant(Constant c);
/// Requires is_pair_constant(c).
std::pair<Constant, Constant> split_pair_constant(Constant c);

/// True for names of the form _n<digits> or _f<digits>, which only the chase
/// and the entailment checker may create.
bool is_reserved_name(std::string_view name);

std::string to_text(const Schema& schema);
std::string constant_text(Constant c);
std::string to_text(const Atom& atom, const Schema& schema);
std::string to_text(const Fact& fact, const Schema& schema);
/// One fact per line, preceded by a domain block when dom ≠ adom.
std::string to_text(const Structure& s);
/// Facts on one line, e.g. "R(a). T(a)."; "(empty)" for no facts.
std::string to_inline_text(const Structure& s);
std::string to_text(const Dexr& rule);
std::string to_text(const DisjunctiveDependency& rule);

}  // namespace dexr
