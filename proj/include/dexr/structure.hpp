#pragma once

#include <set>
#include <vector>

#include "dexr/schema.hpp"
#include "dexr/symbol.hpp"

namespace dexr {

using Tuple = std::vector<Constant>;

struct Fact {
  RelId relation = 0;
  Tuple args;

  friend bool operator==(const Fact&, const Fact&) = default;
  friend auto operator<=>(const Fact&, const Fact&) = default;
};

/// Finite relational structure: a domain of constants plus, for each relation
/// of the schema, a sorted set of tuples over that domain.
///
/// Adding a fact also adds its constants to the domain, so the invariant
/// adom(I) ⊆ dom(I) holds by construction. Equality compares schema, domain
/// and fact sets.
class Structure {
 public:
  explicit Structure(SchemaPtr schema);
  Structure(SchemaPtr schema, const std::vector<Fact>& facts, const std::set<Constant>& extra_domain = {});

  const SchemaPtr& schema() const { return schema_; }
  const std::set<Constant>& domain() const { return domain_; }
  const std::set<Tuple>& tuples(RelId relation) const { return relations_.at(relation); }

  /// Throws Error(Arity) or Error(UnknownRelation) for ill-typed facts.
  /// Returns true if the fact was not present before.
  bool add_fact(const Fact& fact);
  void add_constant(Constant c) { domain_.insert(c); }

  bool contains(const Fact& fact) const;
  bool contains(RelId relation, const Tuple& args) const;
  std::size_t fact_count() const;
  bool empty() const { return fact_count() == 0; }

  /// All facts ordered by relation index, then tuple.
  std::vector<Fact> facts() const;

  friend bool operator==(const Structure& a, const Structure& b);

 private:
  SchemaPtr schema_;
  std::set<Constant> domain_;
  std::vector<std::set<Tuple>> relations_;
};

/// Constants occurring in at least one fact.
std::set<Constant> active_domain(const Structure& s);

/// Substructure induced by `domain` (J ⪯ I). Throws Error(DomainNotSubset).
Structure induced_substructure(const Structure& s, const std::set<Constant>& domain);

/// facts(J) ⊆ facts(I). Throws Error(SchemaMismatch).
bool is_subset(const Structure& j, const Structure& i);

/// J ⪯ I: dom(J) ⊆ dom(I) and J holds exactly the facts of I over dom(J).
bool is_substructure(const Structure& j, const Structure& i);

/// The structure with κ constants c1..cκ in which every relation is full.
Structure critical_structure(const SchemaPtr& schema, int kappa);

/// Union of fact sets and domains; schemas must agree.
Structure merge(const Structure& a, const Structure& b);

/// Linear: at most one fact. Guarded: no facts, or one fact mentions every
/// constant of the active domain.
bool is_linear(const Structure& s);
bool is_guarded(const Structure& s);

}  // namespace dexr
