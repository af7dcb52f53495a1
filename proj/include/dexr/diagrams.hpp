#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dexr/chase.hpp"
#include "dexr/rule.hpp"
#include "dexr/structure.hpp"

namespace dexr {

/// A non-empty conjunction over constants of K and variables Y1..Ym, kept in
/// canonical form: atoms sorted and deduplicated, variables renamed so that
/// the atom list is lexicographically least.
struct NegConjunction {
  std::vector<Atom> atoms;

  static NegConjunction canonical(std::vector<Atom> atoms);
  std::vector<Variable> variables() const { return variables_of(atoms); }

  friend bool operator==(const NegConjunction&, const NegConjunction&) = default;
  friend auto operator<=>(const NegConjunction&, const NegConjunction&) = default;
};

/// Δ: the facts of K, pairwise inequalities between the constants of K, and
/// negated existential closures of the conjunctions in G. Constants are
/// interpreted as themselves.
struct Diagram {
  Structure k;
  std::vector<NegConjunction> negated;

  /// Unordered pairs of distinct constants of dom(K).
  std::vector<std::pair<Constant, Constant>> inequalities() const;
  bool is_tautology() const { return k.domain().empty() && negated.empty(); }
};

enum class NegMode {
  /// Every conjunction whose closure fails in I.
  All,
  /// Only conjunctions all of whose proper sub-conjunctions hold in I. Any
  /// diagram built from arbitrary candidates is implied by one built from
  /// these, so compatibility verdicts do not change.
  Minimal,
};

struct NegOptions {
  NegMode mode = NegMode::All;
  /// Throws Error(LimitExceeded) once this many conjunctions were examined.
  std::size_t max_conjunctions = 500000;
};

/// N^I_{K,m}, sorted by size and then atoms. Throws Error(NotSubset) unless
/// K ⊆ I, and Error(InvalidArgument) unless dom(K) = adom(K).
std::vector<NegConjunction> neg_candidates(const Structure& k, const Structure& i, int m,
                                           const NegOptions& options = {});

/// Throws Error(NotSubset) unless K ⊆ I and Error(GNotNegative) if some
/// conjunction of G is satisfied in I or mentions a constant outside K.
Diagram build_diagram(const Structure& k, const Structure& i, std::vector<NegConjunction> g);

bool satisfies_diagram(const Structure& j, const Diagram& d);

/// Φ: the diagram with each constant c of K replaced by a variable X1, X2, ...
/// (in constant order), read as ∃x̄ Φ.
struct VariablizedDiagram {
  SchemaPtr schema;
  std::vector<Variable> variables;
  std::vector<Atom> positive;
  std::vector<std::pair<Variable, Variable>> inequalities;
  std::vector<NegConjunction> negated;

  bool is_tautology() const { return variables.empty() && positive.empty() && negated.empty(); }
};

VariablizedDiagram variablize(const Diagram& d);

/// J ⊨ ∃x̄ Φ.
bool holds(const Structure& j, const VariablizedDiagram& phi);

/// A dependency equivalent to ¬∃x̄ Φ.
DisjunctiveDependency diagram_to_dd(const Diagram& d);

std::string to_text(const Diagram& d);
std::string to_text(const NegConjunction& g, const Schema& schema);
std::string to_text(const VariablizedDiagram& phi);

enum class CompatVariant { Plain, Linear, Guarded };
enum class CompatStatus { Compatible, NotCompatible, Unknown };

std::string_view to_string(CompatVariant v);
std::string_view to_string(CompatStatus s);

struct CompatOptions {
  ChaseBudget budget{16, 4000, 32};
  NegOptions neg{NegMode::Minimal, 500000};
  /// Fallback search over dom(K) plus up to this many extra elements.
  int extra_elements = 2;
  int max_fact_bits = 20;
  /// Stop after this many diagrams; the verdict is then Unknown at best.
  std::size_t max_diagrams = 200000;
};

struct DiagramCheck {
  Diagram diagram;
  CompatStatus status = CompatStatus::Unknown;
  /// A model of Σ satisfying the diagram when status is Compatible.
  std::optional<Structure> model;
};

struct CompatVerdict {
  CompatStatus status = CompatStatus::Compatible;
  /// Every diagram examined, in order. For NotCompatible the last entry is
  /// the witness.
  std::vector<DiagramCheck> checks;
  std::size_t substructures = 0;
  std::string note;

  const DiagramCheck* witness() const;
};

/// Looks for a model of Σ that satisfies the diagram: first a chase of K that
/// abandons branches where a negated conjunction matches, then a bounded
/// finite search.
DiagramCheck find_diagram_model(const Diagram& d, std::span<const Dexr> rules, const CompatOptions& options);

/// Candidate substructures K of I for the given variant, ordered by size and
/// then by constants (or by fact for the linear variant).
std::vector<Structure> compat_substructures(const Structure& i, int n, CompatVariant variant);

CompatVerdict check_compat_with(const Structure& i, std::span<const Dexr> rules, const RuleProfile& profile,
                                CompatVariant variant, const CompatOptions& options = {});

}  // namespace dexr
