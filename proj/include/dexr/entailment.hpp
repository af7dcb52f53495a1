#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dexr/chase.hpp"
#include "dexr/homs.hpp"
#include "dexr/rule.hpp"
#include "dexr/structure.hpp"

namespace dexr {

enum class EntailStatus { Entailed, NotEntailed, Unknown };

std::string_view to_string(EntailStatus s);

struct EntailOptions {
  ChaseBudget budget{24, 5000, 48};
  /// Countermodels are searched over domains {a}, {a,b}, ... up to this size.
  int countermodel_bound = 3;
  /// Domain sizes whose fact space exceeds this many bits are skipped.
  int max_fact_bits = 20;
};

struct Verdict {
  EntailStatus status = EntailStatus::Unknown;
  /// NotEntailed: a model of the premises that violates the conclusion.
  std::optional<Structure> countermodel;
  /// Entailed: deepest chase node at which a branch reached the head.
  int depth = 0;
  /// For sets of conclusions: the first one that was not entailed.
  std::optional<std::size_t> failing;
  std::string note;
};

/// The body as a structure over fresh constants _f1, _f2, ... (one per
/// universal variable, in canonical order) and the head with those constants
/// substituted. Equality disjuncts become equalities between constants.
struct FrozenBody {
  Structure structure;
  Assignment rho;
  std::vector<Disjunct> head;
};

FrozenBody freeze_body(const Dexr& rule);
FrozenBody freeze_body(const DisjunctiveDependency& dd);

/// Σ ⊨ σ. Entailed when every branch of the chase of the frozen body reaches
/// some head disjunct; NotEntailed with a countermodel from exhaustive search
/// over small domains or from a saturated branch that misses the head.
/// Equalities count as reached only when both sides are the same variable.
Verdict entails(std::span<const Dexr> premises, const Dexr& conclusion, const EntailOptions& options = {});
Verdict entails_dd(std::span<const Dexr> premises, const DisjunctiveDependency& conclusion,
                   const EntailOptions& options = {});

/// premises ⊨ every conclusion. NotEntailed reports the first failing
/// conclusion and its countermodel.
Verdict entails_all(std::span<const Dexr> premises, std::span<const Dexr> conclusions,
                    const EntailOptions& options = {});

}  // namespace dexr
