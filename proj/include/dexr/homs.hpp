#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "dexr/rule.hpp"
#include "dexr/structure.hpp"

namespace dexr {

/// Maps variables (or, for structure homomorphisms, source constants) to
/// constants of the target.
using Assignment = std::map<Symbol, Constant>;

struct MatchOptions {
  /// Distinct variables must map to distinct constants.
  bool injective = false;
  /// Extra variables that occur in no atom; each ranges over the whole target
  /// domain.
  std::vector<Variable> free_variables;
};

/// Receives each match; return false to stop the enumeration.
using MatchCallback = std::function<bool(const Assignment&)>;

/// Enumerates every assignment of the variables of `atoms` (plus
/// options.free_variables) that extends `fixed` and sends each atom to a fact
/// of `target`. Constants in atoms denote themselves. Each match contains the
/// entries of `fixed` as well. Enumeration order is deterministic.
void for_each_match(std::span<const Atom> atoms, const Structure& target, const Assignment& fixed,
                    const MatchCallback& callback, const MatchOptions& options = {});

std::optional<Assignment> find_match(std::span<const Atom> atoms, const Structure& target,
                                     const Assignment& fixed = {}, const MatchOptions& options = {});

std::vector<Assignment> all_matches(std::span<const Atom> atoms, const Structure& target,
                                    const Assignment& fixed = {}, const MatchOptions& options = {});

/// Homomorphisms between structures. Every element of dom(source) is mapped,
/// including elements that occur in no fact. Throws Error(SchemaMismatch).
std::optional<Assignment> find_homomorphism(const Structure& source, const Structure& target,
                                            const Assignment& fixed = {});
std::vector<Assignment> all_homomorphisms(const Structure& source, const Structure& target,
                                          const Assignment& fixed = {});
void for_each_homomorphism(const Structure& source, const Structure& target, const Assignment& fixed,
                           const MatchCallback& callback);

/// Checks that `h` is total on dom(source) and maps facts to facts.
bool is_homomorphism(const Assignment& h, const Structure& source, const Structure& target);

bool are_isomorphic(const Structure& a, const Structure& b);

/// The facts of `s` as constant-only atoms.
std::vector<Atom> as_atoms(const Structure& s);

}  // namespace dexr
