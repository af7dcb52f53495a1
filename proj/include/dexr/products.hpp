#pragma once

#include <span>

#include "dexr/chase.hpp"
#include "dexr/homs.hpp"
#include "dexr/structure.hpp"

namespace dexr {

/// I ⊗ J over the full Cartesian product of the domains. Elements are pair
/// constants (see make_pair_constant). Throws Error(SchemaMismatch).
Structure direct_product(const Structure& i, const Structure& j);

/// The left projection ⟨a,b⟩ ↦ a on dom(K). Throws Error(NotAProduct) if some
/// element of K is not a pair constant.
Assignment projective_homomorphism(const Structure& k);

/// Chases I ⊗ J under Σ and returns the first saturated result, in branch-path
/// order, that maps into I by an extension of the projection. Throws
/// Error(InputNotModel) unless I ⊨ Σ and J ⊨ Σ, and Error(Exhausted) when no
/// qualifying result is found within the budget.
Structure repairable_direct_product(const Structure& i, const Structure& j, std::span<const Dexr> rules,
                                    const ChaseBudget& budget = {});

}  // namespace dexr
