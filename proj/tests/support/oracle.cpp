#include "oracle.hpp"

#include <algorithm>

#include "dexr/error.hpp"

namespace dexr::oracle {

namespace {

std::vector<Constant> letters(std::size_t n) {
  std::vector<Constant> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

Constant value_of(const Term& t, const Valuation& v) { return t.is_variable() ? v.at(t.name) : t.name; }

bool fact_holds(const Structure& s, const Atom& a, const Valuation& v) {
  Tuple t;
  for (const auto& term : a.args) t.push_back(value_of(term, v));
  return s.contains(a.relation, t);
}

std::vector<Constant> domain_of(const Structure& s) { return {s.domain().begin(), s.domain().end()}; }

std::vector<Fact> all_facts(const Schema& schema, const std::vector<Constant>& dom) {
  std::vector<Fact> out;
  for (RelId r = 0; r < schema.size(); ++r) {
    const auto arity = static_cast<std::size_t>(schema.arity(r));
    if (dom.empty()) continue;
    std::vector<std::size_t> idx(arity, 0);
    while (true) {
      Tuple t;
      for (auto k : idx) t.push_back(dom[k]);
      out.push_back(Fact{r, t});
      std::size_t pos = arity;
      while (pos > 0 && ++idx[pos - 1] == dom.size()) idx[--pos] = 0;
      if (pos == 0) break;
    }
  }
  return out;
}

}  // namespace

bool any_valuation(const std::vector<Symbol>& vars, const std::vector<Constant>& domain, Valuation base,
                   const std::function<bool(const Valuation&)>& f) {
  if (vars.empty()) return f(base);
  if (domain.empty()) return false;
  std::vector<std::size_t> idx(vars.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i) base[vars[i]] = domain[idx[i]];
    if (f(base)) return true;
    std::size_t pos = vars.size();
    while (pos > 0 && ++idx[pos - 1] == domain.size()) idx[--pos] = 0;
    if (pos == 0) return false;
  }
}

bool atoms_hold(const Structure& s, std::span<const Atom> atoms, const Valuation& v) {
  return std::all_of(atoms.begin(), atoms.end(), [&](const Atom& a) { return fact_holds(s, a, v); });
}

bool satisfies(const Structure& s, const Dexr& rule) {
  const auto dom = domain_of(s);
  const bool violated = any_valuation(rule.universal_variables(), dom, {}, [&](const Valuation& v) {
    if (!atoms_hold(s, rule.body(), v)) return false;
    for (const auto& d : rule.head()) {
      if (any_valuation(d.existentials, dom, v, [&](const Valuation& w) { return atoms_hold(s, d.atoms, w); })) {
        return false;
      }
    }
    return true;
  });
  return !violated;
}

bool satisfies(const Structure& s, const DisjunctiveDependency& dd) {
  const auto dom = domain_of(s);
  const bool violated = any_valuation(dd.universal_variables(), dom, {}, [&](const Valuation& v) {
    if (!atoms_hold(s, dd.body(), v)) return false;
    for (const auto& d : dd.head()) {
      if (const auto* eq = std::get_if<Equality>(&d)) {
        if (v.at(eq->lhs) == v.at(eq->rhs)) return false;
        continue;
      }
      const auto& c = std::get<ExistentialConjunction>(d);
      if (any_valuation(c.existentials, dom, v, [&](const Valuation& w) { return atoms_hold(s, c.atoms, w); })) {
        return false;
      }
    }
    return true;
  });
  return !violated;
}

bool satisfies_all(const Structure& s, std::span<const Dexr> rules) {
  return std::all_of(rules.begin(), rules.end(), [&](const Dexr& r) { return satisfies(s, r); });
}

namespace {

bool maps_facts(const Structure& from, const Structure& to, const Valuation& v) {
  for (const auto& f : from.facts()) {
    Tuple t;
    for (const auto& c : f.args) t.push_back(v.at(c));
    if (!to.contains(f.relation, t)) return false;
  }
  return true;
}

}  // namespace

bool hom_exists(const Structure& from, const Structure& to, const Valuation& fixed) {
  std::vector<Symbol> free;
  for (const auto& c : from.domain()) {
    if (!fixed.contains(c)) free.push_back(c);
  }
  return any_valuation(free, domain_of(to), fixed, [&](const Valuation& v) { return maps_facts(from, to, v); });
}

std::vector<Valuation> all_homs(const Structure& from, const Structure& to) {
  std::vector<Valuation> out;
  const std::vector<Symbol> elems(from.domain().begin(), from.domain().end());
  any_valuation(elems, domain_of(to), {}, [&](const Valuation& v) {
    if (maps_facts(from, to, v)) out.push_back(v);
    return false;
  });
  return out;
}

bool satisfies_diagram(const Structure& j, const Diagram& d) {
  for (const auto& f : d.k.facts()) {
    if (!j.contains(f)) return false;
  }
  auto dom = domain_of(j);
  for (const auto& c : d.k.domain()) {
    if (!j.domain().contains(c)) dom.push_back(c);
  }
  for (const auto& g : d.negated) {
    if (any_valuation(g.variables(), dom, {}, [&](const Valuation& v) { return atoms_hold(j, g.atoms, v); })) {
      return false;
    }
  }
  return true;
}

bool holds(const Structure& j, const VariablizedDiagram& phi) {
  const auto dom = domain_of(j);
  return any_valuation(phi.variables, dom, {}, [&](const Valuation& v) {
    for (const auto& [x, y] : phi.inequalities) {
      if (v.at(x) == v.at(y)) return false;
    }
    if (!atoms_hold(j, phi.positive, v)) return false;
    for (const auto& g : phi.negated) {
      std::vector<Symbol> ys;
      for (const auto& y : g.variables()) {
        if (!v.contains(y)) ys.push_back(y);
      }
      if (any_valuation(ys, dom, v, [&](const Valuation& w) { return atoms_hold(j, g.atoms, w); })) return false;
    }
    return true;
  });
}

std::size_t fact_space(const Schema& schema, std::size_t domain_size) {
  std::size_t total = 0;
  for (RelId r = 0; r < schema.size(); ++r) {
    std::size_t c = 1;
    for (int k = 0; k < schema.arity(r); ++k) c *= domain_size;
    total += c;
  }
  return total;
}

std::vector<Structure> corpus(const SchemaPtr& schema, int max_domain, int max_bits) {
  std::vector<Structure> out;
  for (int n = 0; n <= max_domain; ++n) {
    const auto dom = letters(static_cast<std::size_t>(n));
    const auto facts = all_facts(*schema, dom);
    if (facts.size() > static_cast<std::size_t>(max_bits)) continue;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << facts.size()); ++mask) {
      Structure s(schema);
      for (const auto& c : dom) s.add_constant(c);
      for (std::size_t b = 0; b < facts.size(); ++b) {
        if (mask >> b & 1) s.add_fact(facts[b]);
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::optional<Structure> countermodel(std::span<const Dexr> premises, const DisjunctiveDependency& conclusion,
                                      const std::vector<Structure>& corpus) {
  for (const auto& s : corpus) {
    if (satisfies_all(s, premises) && !satisfies(s, conclusion)) return s;
  }
  return std::nullopt;
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

SchemaPtr random_schema(Rng& rng, int max_relations, int max_arity) {
  static const char* const names[] = {"R", "S", "T", "P", "Q", "U"};
  const int count = uniform(rng, 1, max_relations);
  std::vector<RelationDecl> rels;
  for (int i = 0; i < count; ++i) rels.push_back({names[i], uniform(rng, 1, max_arity)});
  return make_schema(std::move(rels));
}

SchemaPtr small_schema(Rng& rng, int max_bits) {
  while (true) {
    auto s = random_schema(rng);
    if (fact_space(*s, 3) <= static_cast<std::size_t>(max_bits)) return s;
  }
}

Dexr random_dexr(Rng& rng, const SchemaPtr& schema, const Shape& shape) {
  const auto random_atom = [&](const std::vector<Symbol>& pool) {
    const auto r = static_cast<RelId>(uniform(rng, 0, static_cast<int>(schema->size()) - 1));
    Atom a{r, {}};
    for (int k = 0; k < schema->arity(r); ++k) {
      a.args.push_back(Term::var(pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(pool.size()) - 1))]));
    }
    return a;
  };
  std::vector<Symbol> universal;
  for (int i = 0; i < std::max(shape.max_universal, 1); ++i) universal.emplace_back("U" + std::to_string(i + 1));

  while (true) {
    const int max_body = shape.linear ? std::min(shape.max_body, 1) : shape.max_body;
    const int body_size = uniform(rng, 0, 999) < shape.empty_body ? 0 : uniform(rng, 1, std::max(max_body, 1));
    std::vector<Atom> body;
    for (int i = 0; i < body_size; ++i) body.push_back(random_atom(universal));
    const auto body_vars = variables_of(body);

    std::vector<ExistentialConjunction> head;
    const int k = uniform(rng, 1, shape.max_disjuncts);
    for (int d = 0; d < k; ++d) {
      const int e = uniform(rng, body_vars.empty() ? 1 : 0, std::max(shape.max_existential, 1));
      if (e > shape.max_existential) continue;
      std::vector<Symbol> pool(body_vars.begin(), body_vars.end());
      for (int z = 0; z < e; ++z) pool.emplace_back("E" + std::to_string(z + 1));
      if (pool.empty()) continue;
      std::vector<Atom> atoms;
      const int size = uniform(rng, 1, shape.max_atoms);
      for (int i = 0; i < size; ++i) atoms.push_back(random_atom(pool));
      std::vector<Variable> used;
      for (const auto& v : variables_of(atoms)) {
        if (std::find(body_vars.begin(), body_vars.end(), v) == body_vars.end()) used.push_back(v);
      }
      head.push_back(ExistentialConjunction{used, atoms});
    }
    if (head.empty()) continue;
    try {
      Dexr rule(schema, body, head);
      if (shape.guarded && !rule.is_guarded()) continue;
      return rule;
    } catch (const Error&) {
    }
  }
}

std::vector<Dexr> random_rules(Rng& rng, const SchemaPtr& schema, int count, const Shape& shape) {
  std::vector<Dexr> out;
  for (int i = 0; i < count; ++i) out.push_back(random_dexr(rng, schema, shape));
  return out;
}

Structure random_structure(Rng& rng, const SchemaPtr& schema, std::size_t domain_size, int density) {
  Structure s(schema);
  const auto dom = letters(domain_size);
  for (const auto& c : dom) s.add_constant(c);
  for (const auto& f : all_facts(*schema, dom)) {
    if (uniform(rng, 0, 999) < density) s.add_fact(f);
  }
  return s;
}

}  // namespace dexr::oracle
