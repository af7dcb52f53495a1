#include "dexr/finite_models.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "dexr/error.hpp"

namespace dexr {

FiniteConstraint FiniteConstraint::from(const Dexr& rule) {
  FiniteConstraint c{rule.body(), {}};
  for (const auto& d : rule.head()) c.head.emplace_back(d);
  return c;
}

FiniteConstraint FiniteConstraint::from(const DisjunctiveDependency& dd) { return {dd.body(), dd.head()}; }

FiniteConstraint FiniteConstraint::forbid(std::vector<Atom> atoms) { return {std::move(atoms), {}}; }

std::vector<Constant> letter_domain(std::size_t size) {
  std::vector<Constant> out;
  for (std::size_t i = 0; i < size; ++i) {
    std::string name(1, static_cast<char>('a' + i % 26));
    if (i >= 26) name += std::to_string(i / 26);
    out.emplace_back(name);
  }
  return out;
}

namespace {

using Mask = std::uint64_t;

struct Grounding {
  Mask body = 0;
  std::vector<Mask> alternatives;  // empty: the grounding is violated whenever the body holds
};

class FactIndex {
 public:
  FactIndex(const Schema& schema, const std::vector<Constant>& domain) : domain_(domain) {
    for (std::size_t i = 0; i < domain_.size(); ++i) position_.emplace(domain_[i], i);
    Mask offset = 0;
    for (RelId r = 0; r < schema.size(); ++r) {
      offsets_.push_back(offset);
      Mask count = 1;
      for (int k = 0; k < schema.arity(r); ++k) count *= domain_.size();
      offset += count;
    }
    total_ = offset;
  }

  std::uint64_t total() const { return total_; }

  /// Bit of a ground atom, or nullopt if it mentions a constant outside the domain.
  std::optional<std::uint64_t> bit(RelId r, const Tuple& t) const {
    std::uint64_t idx = 0;
    for (const auto& c : t) {
      auto it = position_.find(c);
      if (it == position_.end()) return std::nullopt;
      idx = idx * domain_.size() + it->second;
    }
    return offsets_[r] + idx;
  }

  Structure decode(const SchemaPtr& schema, Mask mask) const {
    Structure out(schema);
    for (const auto& c : domain_) out.add_constant(c);
    for (RelId r = 0; r < schema->size(); ++r) {
      const std::uint64_t end = r + 1 < offsets_.size() ? offsets_[r + 1] : total_;
      for (std::uint64_t b = offsets_[r]; b < end; ++b) {
        if (!(mask >> b & 1)) continue;
        Tuple t(static_cast<std::size_t>(schema->arity(r)));
        std::uint64_t idx = b - offsets_[r];
        for (std::size_t k = t.size(); k-- > 0;) {
          t[k] = domain_[idx % domain_.size()];
          idx /= domain_.size();
        }
        out.add_fact(Fact{r, std::move(t)});
      }
    }
    return out;
  }

 private:
  std::vector<Constant> domain_;
  std::map<Constant, std::size_t> position_;
  std::vector<std::uint64_t> offsets_;
  std::uint64_t total_ = 0;
};

// Calls f for every assignment of `vars` over the domain, extending `base`.
template <class F>
void for_each_assignment(const std::vector<Variable>& vars, const std::vector<Constant>& domain,
                         std::map<Symbol, Constant> base, F&& f) {
  if (vars.empty()) {
    f(base);
    return;
  }
  if (domain.empty()) return;
  std::vector<std::size_t> idx(vars.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i) base[vars[i]] = domain[idx[i]];
    f(base);
    std::size_t pos = vars.size();
    while (pos > 0 && ++idx[pos - 1] == domain.size()) idx[--pos] = 0;
    if (pos == 0) return;
  }
}

std::optional<Mask> atoms_mask(const std::vector<Atom>& atoms, const std::map<Symbol, Constant>& h,
                               const FactIndex& index) {
  Mask m = 0;
  for (const auto& a : atoms) {
    Tuple t;
    for (const auto& term : a.args) t.push_back(term.is_variable() ? h.at(term.name) : term.name);
    auto b = index.bit(a.relation, t);
    if (!b) return std::nullopt;
    m |= Mask{1} << *b;
  }
  return m;
}

std::vector<Grounding> compile(const FiniteConstraint& c, const std::vector<Constant>& domain,
                               const FactIndex& index) {
  std::vector<Grounding> out;
  const auto vars = variables_of(c.body);
  for_each_assignment(vars, domain, {}, [&](const std::map<Symbol, Constant>& h) {
    auto body = atoms_mask(c.body, h, index);
    if (!body) return;
    Grounding g{*body, {}};
    for (const auto& d : c.head) {
      if (const auto* eq = std::get_if<Equality>(&d)) {
        if (h.at(eq->lhs) == h.at(eq->rhs)) return;
        continue;
      }
      const auto& conj = std::get<ExistentialConjunction>(d);
      for_each_assignment(conj.existentials, domain, h, [&](const std::map<Symbol, Constant>& hz) {
        if (auto m = atoms_mask(conj.atoms, hz, index)) g.alternatives.push_back(*m);
      });
    }
    std::sort(g.alternatives.begin(), g.alternatives.end());
    g.alternatives.erase(std::unique(g.alternatives.begin(), g.alternatives.end()), g.alternatives.end());
    // An alternative inside the body holds whenever the body does.
    for (Mask alt : g.alternatives) {
      if ((alt & ~g.body) == 0) return;
    }
    out.push_back(std::move(g));
  });
  return out;
}

bool grounding_holds(const Grounding& g, Mask mask) {
  if ((mask & g.body) != g.body) return true;
  for (Mask alt : g.alternatives) {
    if ((mask & alt) == alt) return true;
  }
  return false;
}

}  // namespace

FiniteModelSearch::FiniteModelSearch(SchemaPtr schema, std::vector<FiniteConstraint> constraints,
                                     std::optional<FiniteConstraint> goal, int max_fact_bits)
    : schema_(std::move(schema)),
      constraints_(std::move(constraints)),
      goal_(std::move(goal)),
      max_fact_bits_(std::min(max_fact_bits, 62)) {}

std::uint64_t FiniteModelSearch::fact_space(std::size_t domain_size) const {
  std::uint64_t total = 0;
  for (RelId r = 0; r < schema_->size(); ++r) {
    std::uint64_t count = 1;
    for (int k = 0; k < schema_->arity(r); ++k) {
      count *= domain_size;
      if (count > (std::uint64_t{1} << 40)) return count;
    }
    total += count;
  }
  return total;
}

SearchStatus FiniteModelSearch::search(const std::vector<Constant>& domain_in, const std::vector<Fact>& required,
                                       std::optional<Structure>& model) const {
  std::vector<Constant> domain = domain_in;
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  const std::uint64_t space = fact_space(domain.size());
  if (space > 62) return SearchStatus::TooLarge;
  const FactIndex index(*schema_, domain);

  Mask forced = 0;
  for (const auto& f : required) {
    auto b = index.bit(f.relation, f.args);
    if (!b) throw Error(ErrorKind::InvalidArgument, "required fact mentions a constant outside the domain");
    forced |= Mask{1} << *b;
  }
  const Mask all = space == 64 ? ~Mask{0} : (Mask{1} << space) - 1;
  const Mask free = all & ~forced;
  if (std::popcount(free) > max_fact_bits_) return SearchStatus::TooLarge;

  std::vector<Grounding> checks;
  for (const auto& c : constraints_) {
    auto g = compile(c, domain, index);
    checks.insert(checks.end(), std::make_move_iterator(g.begin()), std::make_move_iterator(g.end()));
  }
  // Cheap, frequently failing checks first.
  std::stable_sort(checks.begin(), checks.end(), [](const Grounding& a, const Grounding& b) {
    return std::popcount(a.body) < std::popcount(b.body);
  });
  std::vector<Grounding> goal;
  if (goal_) goal = compile(*goal_, domain, index);
  if (goal_ && goal.empty()) return SearchStatus::None;

  Mask s = 0;
  while (true) {
    const Mask mask = forced | s;
    bool ok = std::all_of(checks.begin(), checks.end(), [&](const Grounding& g) { return grounding_holds(g, mask); });
    if (ok && goal_) {
      ok = std::any_of(goal.begin(), goal.end(), [&](const Grounding& g) { return !grounding_holds(g, mask); });
    }
    if (ok) {
      model = index.decode(schema_, mask);
      return SearchStatus::Found;
    }
    s = ((s | ~free) + 1) & free;
    if (s == 0) break;
  }
  return SearchStatus::None;
}

}  // namespace dexr
