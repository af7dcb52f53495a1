#include "dexr/satisfaction.hpp"

namespace dexr {

namespace {

bool conjunction_holds(const Structure& i, const ExistentialConjunction& conj, const Assignment& h) {
  return find_match(conj.atoms, i, h).has_value();
}

template <class Rule>
std::optional<Assignment> first_violation(const Structure& i, const Rule& rule) {
  require_same_schema(i.schema(), rule.schema(), "satisfaction");
  std::optional<Assignment> out;
  for_each_match(rule.body(), i, {}, [&](const Assignment& h) {
    if (head_holds(i, rule, h)) return true;
    out = h;
    return false;
  });
  return out;
}

}  // namespace

bool head_holds(const Structure& i, const Dexr& rule, const Assignment& h) {
  for (const auto& d : rule.head()) {
    if (conjunction_holds(i, d, h)) return true;
  }
  return false;
}

bool head_holds(const Structure& i, const DisjunctiveDependency& dd, const Assignment& h) {
  for (const auto& d : dd.head()) {
    if (const auto* eq = std::get_if<Equality>(&d)) {
      if (h.at(eq->lhs) == h.at(eq->rhs)) return true;
    } else if (conjunction_holds(i, std::get<ExistentialConjunction>(d), h)) {
      return true;
    }
  }
  return false;
}

std::optional<Assignment> find_violation(const Structure& i, const Dexr& rule) { return first_violation(i, rule); }

std::optional<Assignment> find_violation(const Structure& i, const DisjunctiveDependency& dd) {
  return first_violation(i, dd);
}

bool satisfies(const Structure& i, const Dexr& rule) { return !find_violation(i, rule); }

bool satisfies(const Structure& i, const DisjunctiveDependency& dd) { return !find_violation(i, dd); }

bool satisfies_all(const Structure& i, std::span<const Dexr> rules) {
  for (const auto& r : rules) {
    if (!satisfies(i, r)) return false;
  }
  return true;
}

}  // namespace dexr
