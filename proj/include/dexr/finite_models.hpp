#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dexr/rule.hpp"
#include "dexr/structure.hpp"

namespace dexr {

/// A universally quantified constraint body → disjunction. Unlike rules, atoms
/// may mention constants; an empty head means the body must not match.
struct FiniteConstraint {
  std::vector<Atom> body;
  std::vector<Disjunct> head;

  static FiniteConstraint from(const Dexr& rule);
  static FiniteConstraint from(const DisjunctiveDependency& dd);
  /// ¬∃ atoms.
  static FiniteConstraint forbid(std::vector<Atom> atoms);
};

enum class SearchStatus { Found, None, TooLarge };

/// Exhaustive search for a structure over a fixed finite domain. Every fact
/// over the domain becomes one bit, ordered by relation and then tuple; fact
/// sets are tried in increasing bitmask order, so the first hit is the
/// structure with the smallest such mask.
class FiniteModelSearch {
 public:
  /// Structures must satisfy all `constraints` and, if given, violate `goal`.
  FiniteModelSearch(SchemaPtr schema, std::vector<FiniteConstraint> constraints,
                    std::optional<FiniteConstraint> goal = std::nullopt, int max_fact_bits = 22);

  /// Number of candidate facts for a domain of the given size.
  std::uint64_t fact_space(std::size_t domain_size) const;

  /// Searches structures with domain exactly `domain` that contain
  /// `required`. Returns TooLarge without searching when the free facts
  /// exceed the bit cap.
  SearchStatus search(const std::vector<Constant>& domain, const std::vector<Fact>& required,
                      std::optional<Structure>& model) const;

 private:
  SchemaPtr schema_;
  std::vector<FiniteConstraint> constraints_;
  std::optional<FiniteConstraint> goal_;
  int max_fact_bits_;
};

/// Constants a, b, c, ... ; after z: a1, b1, ...
std::vector<Constant> letter_domain(std::size_t size);

}  // namespace dexr
