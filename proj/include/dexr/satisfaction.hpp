#pragma once

#include <optional>
#include <span>

#include "dexr/homs.hpp"
#include "dexr/rule.hpp"
#include "dexr/structure.hpp"

namespace dexr {

/// Whether some head disjunct extends the body match `h` into facts(I).
bool head_holds(const Structure& i, const Dexr& rule, const Assignment& h);
bool head_holds(const Structure& i, const DisjunctiveDependency& dd, const Assignment& h);

/// First body match (in search order) that no head disjunct extends.
std::optional<Assignment> find_violation(const Structure& i, const Dexr& rule);
std::optional<Assignment> find_violation(const Structure& i, const DisjunctiveDependency& dd);

bool satisfies(const Structure& i, const Dexr& rule);
bool satisfies(const Structure& i, const DisjunctiveDependency& dd);
bool satisfies_all(const Structure& i, std::span<const Dexr> rules);

}  // namespace dexr
