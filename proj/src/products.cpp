#include "dexr/products.hpp"

#include <algorithm>

#include "dexr/error.hpp"
#include "dexr/satisfaction.hpp"
#include "dexr/syntax.hpp"

namespace dexr {

Structure direct_product(const Structure& i, const Structure& j) {
  require_same_schema(i.schema(), j.schema(), "direct_product");
  Structure out(i.schema());
  for (const auto& a : i.domain()) {
    for (const auto& b : j.domain()) out.add_constant(make_pair_constant(a, b));
  }
  for (RelId r = 0; r < i.schema()->size(); ++r) {
    for (const auto& left : i.tuples(r)) {
      for (const auto& right : j.tuples(r)) {
        Tuple t;
        for (std::size_t k = 0; k < left.size(); ++k) t.push_back(make_pair_constant(left[k], right[k]));
        out.add_fact(Fact{r, std::move(t)});
      }
    }
  }
  return out;
}

Assignment projective_homomorphism(const Structure& k) {
  Assignment out;
  for (const auto& c : k.domain()) {
    if (!is_pair_constant(c)) throw Error(ErrorKind::NotAProduct, "element " + c.str() + " is not a pair");
    out[c] = split_pair_constant(c).first;
  }
  return out;
}

Structure repairable_direct_product(const Structure& i, const Structure& j, std::span<const Dexr> rules,
                                    const ChaseBudget& budget) {
  require_same_schema(i.schema(), j.schema(), "repairable_direct_product");
  for (const auto& r : rules) {
    if (!satisfies(i, r)) throw Error(ErrorKind::InputNotModel, "left structure violates " + to_text(r));
    if (!satisfies(j, r)) throw Error(ErrorKind::InputNotModel, "right structure violates " + to_text(r));
  }
  const Structure product = direct_product(i, j);
  const Assignment pi = projective_homomorphism(product);
  ChaseOptions options;
  options.budget = budget;
  auto outcome = chase(product, rules, options);
  std::stable_sort(outcome.saturated.begin(), outcome.saturated.end(),
                   [](const ChaseResult& a, const ChaseResult& b) { return a.path < b.path; });
  for (const auto& result : outcome.saturated) {
    if (find_homomorphism(result.structure, i, pi)) return result.structure;
  }
  throw Error(ErrorKind::Exhausted, "no saturated chase branch admits a homomorphism extending the projection (" +
                                        std::to_string(outcome.saturated.size()) + " saturated, " +
                                        std::to_string(outcome.truncated_count()) + " truncated)");
}

}  // namespace dexr
