#include "dexr/homs.hpp"

#include <algorithm>
#include <set>

#include "dexr/error.hpp"

namespace dexr {

namespace {

// Backtracking CSP search. Variables are indexed in first-occurrence order;
// each step picks the unassigned variable with the fewest remaining
// candidates and narrows the other variables of every atom it touches.
class Matcher {
 public:
  Matcher(std::span<const Atom> atoms, const Structure& target, const Assignment& fixed,
          const MatchOptions& options)
      : atoms_(atoms.begin(), atoms.end()), target_(target), fixed_(fixed), injective_(options.injective) {
    std::map<Variable, int> index;
    auto add_var = [&](Variable v) {
      if (fixed_.contains(v) || index.contains(v)) return;
      index.emplace(v, static_cast<int>(vars_.size()));
      vars_.push_back(v);
    };
    for (const auto& a : atoms_) {
      for (const auto& t : a.args) {
        if (t.is_variable()) add_var(t.name);
      }
    }
    for (const auto& v : options.free_variables) add_var(v);

    // Terms compiled to slots: >= 0 is a variable index, < 0 a ground value.
    for (const auto& a : atoms_) {
      CompiledAtom c{a.relation, {}, {}};
      for (const auto& t : a.args) {
        if (t.is_variable() && !fixed_.contains(t.name)) {
          c.slots.push_back(index.at(t.name));
          c.ground.emplace_back();
        } else {
          c.slots.push_back(-1);
          c.ground.push_back(t.is_variable() ? fixed_.at(t.name) : t.name);
        }
      }
      compiled_.push_back(std::move(c));
    }
    atoms_of_var_.resize(vars_.size());
    for (std::size_t i = 0; i < compiled_.size(); ++i) {
      std::set<int> seen;
      for (int s : compiled_[i].slots) {
        if (s >= 0 && seen.insert(s).second) atoms_of_var_[s].push_back(static_cast<int>(i));
      }
    }
    value_.assign(vars_.size(), std::nullopt);
    if (injective_) {
      for (const auto& [k, v] : fixed_) used_.insert(v);
    }
  }

  void run(const MatchCallback& callback) {
    callback_ = &callback;
    for (const auto& a : atoms_) {
      if (a.relation >= target_.schema()->size()) return;
    }
    std::vector<std::vector<Constant>> domains(vars_.size());
    const std::vector<Constant> everything(target_.domain().begin(), target_.domain().end());
    for (std::size_t v = 0; v < vars_.size(); ++v) domains[v] = everything;
    for (std::size_t i = 0; i < compiled_.size(); ++i) {
      if (!narrow(static_cast<int>(i), domains)) return;
    }
    search(domains);
  }

 private:
  struct CompiledAtom {
    RelId relation;
    std::vector<int> slots;
    std::vector<Constant> ground;
  };

  // Restricts the candidates of the unassigned variables of atom `ai` to values
  // that occur in some tuple consistent with the current partial assignment.
  bool narrow(int ai, std::vector<std::vector<Constant>>& domains) const {
    const auto& atom = compiled_[ai];
    const std::size_t arity = atom.slots.size();
    std::map<int, std::set<Constant>> support;
    bool any = false;
    for (const auto& tuple : target_.tuples(atom.relation)) {
      if (!consistent(atom, tuple, domains)) continue;
      any = true;
      for (std::size_t k = 0; k < arity; ++k) {
        const int s = atom.slots[k];
        if (s >= 0 && !value_[s]) support[s].insert(tuple[k]);
      }
    }
    if (!any) return false;
    for (auto& [s, vals] : support) {
      auto& dom = domains[s];
      std::erase_if(dom, [&](Constant c) { return !vals.contains(c); });
      if (dom.empty()) return false;
    }
    return true;
  }

  bool consistent(const CompiledAtom& atom, const Tuple& tuple,
                  const std::vector<std::vector<Constant>>& domains) const {
    const std::size_t arity = atom.slots.size();
    for (std::size_t k = 0; k < arity; ++k) {
      const int s = atom.slots[k];
      if (s < 0) {
        if (tuple[k] != atom.ground[k]) return false;
      } else if (value_[s]) {
        if (tuple[k] != *value_[s]) return false;
      } else {
        // Repeated variable within the atom must agree.
        for (std::size_t j = 0; j < k; ++j) {
          if (atom.slots[j] == s && tuple[j] != tuple[k]) return false;
        }
        if (!std::binary_search(domains[s].begin(), domains[s].end(), tuple[k])) return false;
      }
    }
    return true;
  }

  bool search(const std::vector<std::vector<Constant>>& domains) {
    int pick = -1;
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      if (value_[v]) continue;
      if (pick < 0 || domains[v].size() < domains[pick].size()) pick = static_cast<int>(v);
    }
    if (pick < 0) return emit();
    for (const auto& c : domains[pick]) {
      if (injective_ && used_.contains(c)) continue;
      value_[pick] = c;
      if (injective_) used_.insert(c);
      auto next = domains;
      next[pick] = {c};
      bool ok = true;
      for (int ai : atoms_of_var_[pick]) {
        if (!narrow(ai, next)) {
          ok = false;
          break;
        }
      }
      bool keep_going = true;
      if (ok) keep_going = search(next);
      if (injective_) used_.erase(c);
      value_[pick].reset();
      if (!keep_going) return false;
    }
    return true;
  }

  bool emit() {
    Assignment out = fixed_;
    for (std::size_t v = 0; v < vars_.size(); ++v) out[vars_[v]] = *value_[v];
    return (*callback_)(out);
  }

  std::vector<Atom> atoms_;
  const Structure& target_;
  const Assignment& fixed_;
  bool injective_;
  std::vector<Variable> vars_;
  std::vector<CompiledAtom> compiled_;
  std::vector<std::vector<int>> atoms_of_var_;
  std::vector<std::optional<Constant>> value_;
  std::set<Constant> used_;
  const MatchCallback* callback_ = nullptr;
};

std::vector<Atom> source_atoms(const Structure& s) {
  std::vector<Atom> out;
  for (const auto& f : s.facts()) {
    Atom a{f.relation, {}};
    for (const auto& c : f.args) a.args.push_back(Term::var(c));
    out.push_back(std::move(a));
  }
  return out;
}

MatchOptions structure_options(const Structure& source, bool injective) {
  MatchOptions options;
  options.injective = injective;
  const auto adom = active_domain(source);
  for (const auto& c : source.domain()) {
    if (!adom.contains(c)) options.free_variables.push_back(c);
  }
  return options;
}

}  // namespace

void for_each_match(std::span<const Atom> atoms, const Structure& target, const Assignment& fixed,
                    const MatchCallback& callback, const MatchOptions& options) {
  Matcher(atoms, target, fixed, options).run(callback);
}

std::optional<Assignment> find_match(std::span<const Atom> atoms, const Structure& target, const Assignment& fixed,
                                     const MatchOptions& options) {
  std::optional<Assignment> found;
  for_each_match(atoms, target, fixed, [&](const Assignment& a) {
    found = a;
    return false;
  }, options);
  return found;
}

std::vector<Assignment> all_matches(std::span<const Atom> atoms, const Structure& target, const Assignment& fixed,
                                    const MatchOptions& options) {
  std::vector<Assignment> out;
  for_each_match(atoms, target, fixed, [&](const Assignment& a) {
    out.push_back(a);
    return true;
  }, options);
  return out;
}

void for_each_homomorphism(const Structure& source, const Structure& target, const Assignment& fixed,
                           const MatchCallback& callback) {
  require_same_schema(source.schema(), target.schema(), "homomorphism");
  for (const auto& [k, v] : fixed) {
    if (!target.domain().contains(v)) return;
  }
  const auto atoms = source_atoms(source);
  Matcher(atoms, target, fixed, structure_options(source, false)).run(callback);
}

std::optional<Assignment> find_homomorphism(const Structure& source, const Structure& target,
                                            const Assignment& fixed) {
  std::optional<Assignment> found;
  for_each_homomorphism(source, target, fixed, [&](const Assignment& a) {
    found = a;
    return false;
  });
  return found;
}

std::vector<Assignment> all_homomorphisms(const Structure& source, const Structure& target,
                                          const Assignment& fixed) {
  std::vector<Assignment> out;
  for_each_homomorphism(source, target, fixed, [&](const Assignment& a) {
    out.push_back(a);
    return true;
  });
  return out;
}

bool is_homomorphism(const Assignment& h, const Structure& source, const Structure& target) {
  if (!same_schema(source.schema(), target.schema())) return false;
  for (const auto& c : source.domain()) {
    auto it = h.find(c);
    if (it == h.end() || !target.domain().contains(it->second)) return false;
  }
  for (const auto& f : source.facts()) {
    Tuple image;
    for (const auto& c : f.args) image.push_back(h.at(c));
    if (!target.contains(f.relation, image)) return false;
  }
  return true;
}

namespace {

// Per element: how often it occurs at each (relation, position).
std::multiset<std::vector<std::size_t>> degree_profile(const Structure& s) {
  std::map<Constant, std::vector<std::size_t>> deg;
  std::size_t width = 0;
  std::vector<std::size_t> offset;
  for (RelId r = 0; r < s.schema()->size(); ++r) {
    offset.push_back(width);
    width += static_cast<std::size_t>(s.schema()->arity(r));
  }
  for (const auto& c : s.domain()) deg[c].assign(width, 0);
  for (RelId r = 0; r < s.schema()->size(); ++r) {
    for (const auto& t : s.tuples(r)) {
      for (std::size_t k = 0; k < t.size(); ++k) ++deg[t[k]][offset[r] + k];
    }
  }
  std::multiset<std::vector<std::size_t>> out;
  for (auto& [c, d] : deg) out.insert(std::move(d));
  return out;
}

}  // namespace

bool are_isomorphic(const Structure& a, const Structure& b) {
  require_same_schema(a.schema(), b.schema(), "are_isomorphic");
  if (a.domain().size() != b.domain().size()) return false;
  for (RelId r = 0; r < a.schema()->size(); ++r) {
    if (a.tuples(r).size() != b.tuples(r).size()) return false;
  }
  if (degree_profile(a) != degree_profile(b)) return false;
  // An injective homomorphism between equal-size domains with equal fact counts
  // per relation is onto the facts, so its inverse is a homomorphism too.
  const auto atoms = source_atoms(a);
  const Assignment none;
  std::optional<Assignment> found;
  Matcher(atoms, b, none, structure_options(a, true)).run([&](const Assignment& h) {
    found = h;
    return false;
  });
  return found.has_value();
}

std::vector<Atom> as_atoms(const Structure& s) {
  std::vector<Atom> out;
  for (const auto& f : s.facts()) {
    Atom a{f.relation, {}};
    for (const auto& c : f.args) a.args.push_back(Term::constant(c));
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace dexr
