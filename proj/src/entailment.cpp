#include "dexr/entailment.hpp"

#include <algorithm>

#include "dexr/error.hpp"
#include "dexr/finite_models.hpp"
#include "dexr/satisfaction.hpp"

namespace dexr {

std::string_view to_string(EntailStatus s) {
  switch (s) {
    case EntailStatus::Entailed: return "Entailed";
    case EntailStatus::NotEntailed: return "NotEntailed";
    case EntailStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

std::vector<Atom> substitute(const std::vector<Atom>& atoms, const Assignment& rho) {
  std::vector<Atom> out = atoms;
  for (auto& a : out) {
    for (auto& t : a.args) {
      if (t.is_variable()) {
        if (auto it = rho.find(t.name); it != rho.end()) t = Term::constant(it->second);
      }
    }
  }
  return out;
}

FrozenBody freeze(const SchemaPtr& schema, const std::vector<Atom>& body, const std::vector<Disjunct>& head) {
  FrozenBody out{Structure(schema), {}, {}};
  std::size_t counter = 0;
  for (const auto& v : variables_of(body)) out.rho.emplace(v, Constant("_f" + std::to_string(++counter)));
  for (const auto& a : substitute(body, out.rho)) {
    Fact f{a.relation, {}};
    for (const auto& t : a.args) f.args.push_back(t.name);
    out.structure.add_fact(f);
  }
  for (const auto& d : head) {
    if (const auto* eq = std::get_if<Equality>(&d)) {
      out.head.emplace_back(Equality{out.rho.at(eq->lhs), out.rho.at(eq->rhs)});
    } else {
      const auto& conj = std::get<ExistentialConjunction>(d);
      out.head.emplace_back(ExistentialConjunction{conj.existentials, substitute(conj.atoms, out.rho)});
    }
  }
  return out;
}

bool frozen_head_reached(const Structure& s, const std::vector<Disjunct>& head) {
  for (const auto& d : head) {
    if (const auto* eq = std::get_if<Equality>(&d)) {
      if (eq->lhs == eq->rhs) return true;
    } else if (find_match(std::get<ExistentialConjunction>(d).atoms, s)) {
      return true;
    }
  }
  return false;
}

}  // namespace

FrozenBody freeze_body(const Dexr& rule) {
  return freeze(rule.schema(), rule.body(), DisjunctiveDependency::from(rule).head());
}

FrozenBody freeze_body(const DisjunctiveDependency& dd) { return freeze(dd.schema(), dd.body(), dd.head()); }

Verdict entails_dd(std::span<const Dexr> premises, const DisjunctiveDependency& conclusion,
                   const EntailOptions& options) {
  for (const auto& r : premises) require_same_schema(r.schema(), conclusion.schema(), "entails");
  Verdict verdict;
  const FrozenBody frozen = freeze_body(conclusion);

  ChaseOptions chase_options;
  chase_options.budget = options.budget;
  chase_options.max_saturated = 1;
  chase_options.prune = [&](const Structure& s) { return frozen_head_reached(s, frozen.head); };
  auto outcome = chase(frozen.structure, premises, chase_options);
  if (outcome.saturated.empty() && outcome.complete()) {
    verdict.status = EntailStatus::Entailed;
    verdict.depth = outcome.max_closed_depth;
    return verdict;
  }

  std::vector<FiniteConstraint> constraints;
  for (const auto& r : premises) constraints.push_back(FiniteConstraint::from(r));
  const FiniteModelSearch search(conclusion.schema(), std::move(constraints), FiniteConstraint::from(conclusion),
                                 options.max_fact_bits);
  bool exhaustive = true;
  for (int size = 1; size <= options.countermodel_bound; ++size) {
    std::optional<Structure> model;
    const auto status = search.search(letter_domain(static_cast<std::size_t>(size)), {}, model);
    if (status == SearchStatus::Found) {
      verdict.status = EntailStatus::NotEntailed;
      verdict.countermodel = std::move(model);
      return verdict;
    }
    if (status == SearchStatus::TooLarge) {
      exhaustive = false;
      break;
    }
  }

  if (!outcome.saturated.empty()) {
    verdict.status = EntailStatus::NotEntailed;
    verdict.countermodel = std::move(outcome.saturated.front().structure);
    return verdict;
  }
  verdict.note = std::to_string(outcome.truncated_count()) + " chase branches cut by the budget; no countermodel" +
                 (exhaustive ? " with at most " + std::to_string(options.countermodel_bound) + " elements"
                             : " within the searchable domain sizes");
  return verdict;
}

Verdict entails(std::span<const Dexr> premises, const Dexr& conclusion, const EntailOptions& options) {
  return entails_dd(premises, DisjunctiveDependency::from(conclusion), options);
}

Verdict entails_all(std::span<const Dexr> premises, std::span<const Dexr> conclusions,
                    const EntailOptions& options) {
  Verdict out;
  out.status = EntailStatus::Entailed;
  for (std::size_t k = 0; k < conclusions.size(); ++k) {
    auto v = entails(premises, conclusions[k], options);
    if (v.status == EntailStatus::NotEntailed) {
      v.failing = k;
      return v;
    }
    if (v.status == EntailStatus::Unknown && out.status == EntailStatus::Entailed) {
      out.status = EntailStatus::Unknown;
      out.failing = k;
      out.note = v.note;
    }
    out.depth = std::max(out.depth, v.depth);
  }
  return out;
}

}  // namespace dexr
