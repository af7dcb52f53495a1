#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "dexr/schema.hpp"
#include "dexr/symbol.hpp"

namespace dexr {

struct Term {
  enum class Kind : std::uint8_t { Variable, Constant };

  Kind kind = Kind::Variable;
  Symbol name;

  static Term var(Symbol s) { return Term{Kind::Variable, s}; }
  static Term var(std::string_view s) { return Term{Kind::Variable, Symbol(s)}; }
  static Term constant(Symbol s) { return Term{Kind::Constant, s}; }
  static Term constant(std::string_view s) { return Term{Kind::Constant, Symbol(s)}; }

  bool is_variable() const { return kind == Kind::Variable; }
  bool is_constant() const { return kind == Kind::Constant; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

struct Atom {
  RelId relation = 0;
  std::vector<Term> args;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// Distinct variables of `atoms` in order of first occurrence.
std::vector<Variable> variables_of(std::span<const Atom> atoms);
std::vector<Constant> constants_of(std::span<const Atom> atoms);

/// ∃z̄ ψ: a non-empty conjunction with its own existential variables.
struct ExistentialConjunction {
  std::vector<Variable> existentials;
  std::vector<Atom> atoms;

  friend bool operator==(const ExistentialConjunction&, const ExistentialConjunction&) = default;
  friend auto operator<=>(const ExistentialConjunction&, const ExistentialConjunction&) = default;
};

struct Equality {
  Variable lhs;
  Variable rhs;

  friend bool operator==(const Equality&, const Equality&) = default;
  friend auto operator<=>(const Equality&, const Equality&) = default;
};

using Disjunct = std::variant<ExistentialConjunction, Equality>;

/// Disjunctive existential rule  φ(x̄,ȳ) → ∨ᵢ ∃z̄ᵢ ψᵢ(x̄ᵢ,z̄ᵢ).
///
/// Construction validates the rule against its schema (constant-free, every
/// head variable bound by the body or by its disjunct's existential prefix)
/// and brings it into a canonical form: variables renamed X1,X2,… and
/// Z1,Z2,… (restarting per disjunct), atoms sorted, and head disjuncts
/// deduplicated up to renaming. Two dexrs are equal iff they are equal up to
/// variable renaming, body-atom order and head-disjunct order.
class Dexr {
 public:
  Dexr(SchemaPtr schema, std::vector<Atom> body, std::vector<ExistentialConjunction> head);

  const SchemaPtr& schema() const { return schema_; }
  const std::vector<Atom>& body() const { return body_; }
  const std::vector<ExistentialConjunction>& head() const { return head_; }

  /// Distinct body variables (x̄ ∪ ȳ), in canonical order.
  std::vector<Variable> universal_variables() const { return variables_of(body_); }
  /// x̄ᵢ: non-existential variables of disjunct i.
  std::vector<Variable> frontier(std::size_t disjunct) const;

  bool is_linear() const { return body_.size() <= 1; }
  bool is_guarded() const;

  friend bool operator==(const Dexr& a, const Dexr& b);
  friend std::strong_ordering operator<=>(const Dexr& a, const Dexr& b);

 private:
  SchemaPtr schema_;
  std::vector<Atom> body_;
  std::vector<ExistentialConjunction> head_;
};

/// Disjunctive dependency ∀x̄ (φ(x̄) → ∨ᵢ ψᵢ(x̄ᵢ)), where each ψᵢ is an
/// equality between body variables or an existential conjunction. With no
/// disjuncts it denotes ¬∃x̄ φ, or falsity when the body is empty as well.
/// Canonicalized like Dexr.
class DisjunctiveDependency {
 public:
  DisjunctiveDependency(SchemaPtr schema, std::vector<Atom> body, std::vector<Disjunct> head);

  static DisjunctiveDependency from(const Dexr& rule);

  const SchemaPtr& schema() const { return schema_; }
  const std::vector<Atom>& body() const { return body_; }
  const std::vector<Disjunct>& head() const { return head_; }
  std::vector<Variable> universal_variables() const { return variables_of(body_); }

  bool is_falsity() const { return body_.empty() && head_.empty(); }
  /// Every disjunct is an equality (and there is at least one).
  bool is_deqr() const;
  /// No equality disjunct and at least one disjunct.
  bool is_dexr() const;
  /// Requires is_dexr().
  Dexr to_dexr() const;

  friend bool operator==(const DisjunctiveDependency& a, const DisjunctiveDependency& b);
  friend std::strong_ordering operator<=>(const DisjunctiveDependency& a, const DisjunctiveDependency& b);

 private:
  SchemaPtr schema_;
  std::vector<Atom> body_;
  std::vector<Disjunct> head_;
};

/// (n, m, ℓ): universal variables, existentials per disjunct, disjuncts.
/// For dependencies ℓ counts only the non-equality disjuncts.
struct RuleProfile {
  int n = 0;
  int m = 0;
  int l = 0;

  bool within(const RuleProfile& bound) const { return n <= bound.n && m <= bound.m && l <= bound.l; }
  friend bool operator==(const RuleProfile&, const RuleProfile&) = default;
};

RuleProfile profile_of(const Dexr& rule);
RuleProfile profile_of(const DisjunctiveDependency& rule);
/// Componentwise maximum; (0,0,0) for an empty set.
RuleProfile profile_of(std::span<const Dexr> rules);

/// Throws Error(UnknownRelation) / Error(Arity) if an atom does not fit the schema.
void check_atom(const Schema& schema, const Atom& atom);

}  // namespace dexr
